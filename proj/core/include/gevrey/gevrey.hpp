#pragma once

#include "gevrey/associated.hpp"
#include "gevrey/bump.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/faa.hpp"
#include "gevrey/fft.hpp"
#include "gevrey/fit.hpp"
#include "gevrey/grid.hpp"
#include "gevrey/lambert.hpp"
#include "gevrey/sequences.hpp"
#include "gevrey/signal_io.hpp"
#include "gevrey/spectral.hpp"
#include "gevrey/version.hpp"
#include "gevrey/wavefront.hpp"
