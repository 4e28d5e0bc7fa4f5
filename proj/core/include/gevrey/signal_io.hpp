#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "gevrey/grid.hpp"

namespace gevrey {

/// CSV with header `x,value` and uniformly spaced x; blank lines and lines
/// starting with `#` are skipped. Malformed content throws
/// ContractError naming the line; an unreadable file throws IoError.
GridSignal read_signal_csv(const std::string& path);
GridSignal parse_signal_csv(std::istream& in, const std::string& source = "<stream>");

void write_signal_csv(std::ostream& out, const GridSignal& s);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace gevrey
