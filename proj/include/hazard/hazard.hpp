#pragma once

#include "hazard/analyze.hpp"
#include "hazard/circuit.hpp"
#include "hazard/error.hpp"
#include "hazard/expr.hpp"
#include "hazard/oracle.hpp"
#include "hazard/rational.hpp"
#include "hazard/symbolic_time.hpp"
#include "hazard/trace_io.hpp"
#include "hazard/waveform.hpp"
