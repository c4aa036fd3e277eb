#pragma once

#include "vmpt/analysis.hpp"
#include "vmpt/config.hpp"
#include "vmpt/decimal.hpp"
#include "vmpt/environment.hpp"
#include "vmpt/errors.hpp"
#include "vmpt/fixtures.hpp"
#include "vmpt/generator.hpp"
#include "vmpt/model.hpp"
#include "vmpt/rng.hpp"
#include "vmpt/trace_io.hpp"
