#pragma once

#include <padic/analytic.hpp>
#include <padic/arith.hpp>
#include <padic/characterization.hpp>
#include <padic/core.hpp>
#include <padic/fermat.hpp>
#include <padic/gamma.hpp>
#include <padic/period_ledger.hpp>
#include <padic/progression.hpp>
#include <padic/weil_action.hpp>
