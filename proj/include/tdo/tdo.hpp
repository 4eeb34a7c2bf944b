#pragma once

#include "tdo/errors.hpp"
#include "tdo/interpolation.hpp"
#include "tdo/models.hpp"
#include "tdo/ode.hpp"
#include "tdo/ermakov.hpp"
#include "tdo/quantum.hpp"
#include "tdo/minimum.hpp"
#include "tdo/alpha_series.hpp"
#include "tdo/bessel.hpp"
#include "tdo/series.hpp"
#include "tdo/phase.hpp"
#include "tdo/io.hpp"
#include "tdo/verify.hpp"
