// Umbrella header for the whole library.

#pragma once

#include "scs/color.hpp"
#include "scs/dataset.hpp"
#include "scs/hair.hpp"
#include "scs/hull.hpp"
#include "scs/image.hpp"
#include "scs/image_io.hpp"
#include "scs/metrics.hpp"
#include "scs/morphology.hpp"
#include "scs/params.hpp"
#include "scs/phantom.hpp"
#include "scs/quantize.hpp"
#include "scs/region.hpp"
#include "scs/resize.hpp"
#include "scs/runner.hpp"
#include "scs/saliency.hpp"
#include "scs/segmentation.hpp"
