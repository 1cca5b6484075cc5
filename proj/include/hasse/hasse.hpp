#pragma once

#include "hasse/arith.hpp"
#include "hasse/asymptotics.hpp"
#include "hasse/brauer.hpp"
#include "hasse/census.hpp"
#include "hasse/errors.hpp"
#include "hasse/fields.hpp"
#include "hasse/geometry.hpp"
#include "hasse/lvalues.hpp"
#include "hasse/numeric.hpp"
#include "hasse/pell.hpp"
#include "hasse/rigidity.hpp"
