#pragma once

// Umbrella header.

#include "srgkit/error.hpp"
#include "srgkit/geometry.hpp"
#include "srgkit/region.hpp"
#include "srgkit/region_algebra.hpp"
#include "srgkit/region_json.hpp"
#include "srgkit/transfer_function.hpp"
#include "srgkit/srg.hpp"
#include "srgkit/feedback.hpp"
#include "srgkit/sim.hpp"
#include "srgkit/svg.hpp"
