#pragma once

// Umbrella header for the 2-inner-product verification toolkit.

#include "twoip/core.hpp"
#include "twoip/gram.hpp"
#include "twoip/space.hpp"
#include "twoip/axioms.hpp"
#include "twoip/reverse.hpp"
#include "twoip/sampling.hpp"
#include "twoip/quadrature.hpp"
#include "twoip/determinantal.hpp"
