#pragma once

#include <michelson/amplitude.hpp>
#include <michelson/config.hpp>
#include <michelson/constants.hpp>
#include <michelson/conventional.hpp>
#include <michelson/convolution.hpp>
#include <michelson/dynamics.hpp>
#include <michelson/errors.hpp>
#include <michelson/fields.hpp>
#include <michelson/grid.hpp>
#include <michelson/moments.hpp>
#include <michelson/quadrature.hpp>
#include <michelson/sideband.hpp>
#include <michelson/validation.hpp>
#include <michelson/weakvalue.hpp>
