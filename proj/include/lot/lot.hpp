#pragma once

#include "lot/characterize.hpp"
#include "lot/errors.hpp"
#include "lot/extended_real.hpp"
#include "lot/generate.hpp"
#include "lot/instance.hpp"
#include "lot/json_io.hpp"
#include "lot/measure.hpp"
#include "lot/rational.hpp"
#include "lot/spacetime.hpp"
#include "lot/transport.hpp"
