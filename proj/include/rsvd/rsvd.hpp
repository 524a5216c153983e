// Umbrella header.
#pragma once

#include "rsvd/angles.hpp"
#include "rsvd/bounds.hpp"
#include "rsvd/core.hpp"
#include "rsvd/drivers.hpp"
#include "rsvd/factor.hpp"
#include "rsvd/io.hpp"
#include "rsvd/rangefinder.hpp"
#include "rsvd/singlepass.hpp"
#include "rsvd/sketch.hpp"
#include "rsvd/testmats.hpp"
#include "rsvd/version.hpp"
