#pragma once

#include "betafull/error.hpp"
#include "betafull/poly.hpp"
#include "betafull/number.hpp"
#include "betafull/shift.hpp"
#include "betafull/sofic.hpp"
#include "betafull/table.hpp"
#include "betafull/io.hpp"
