// Umbrella header.
#pragma once

#include "m24rad/bigreal.hpp"
#include "m24rad/hg.hpp"
#include "m24rad/m24.hpp"
#include "m24rad/modforms.hpp"
#include "m24rad/modgroup.hpp"
#include "m24rad/numeric.hpp"
#include "m24rad/phase_arith.hpp"
#include "m24rad/pseries.hpp"
#include "m24rad/rademacher.hpp"
#include "m24rad/serialize.hpp"
