#pragma once

#include "dqcc/bench.hpp"
#include "dqcc/checks.hpp"
#include "dqcc/circuit.hpp"
#include "dqcc/circuit_io.hpp"
#include "dqcc/compiled_io.hpp"
#include "dqcc/distributed.hpp"
#include "dqcc/equivalence.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/gate.hpp"
#include "dqcc/generators.hpp"
#include "dqcc/metrics.hpp"
#include "dqcc/network.hpp"
#include "dqcc/network_io.hpp"
#include "dqcc/network_presets.hpp"
#include "dqcc/partition.hpp"
#include "dqcc/pipeline.hpp"
#include "dqcc/router.hpp"
#include "dqcc/scheduler.hpp"
#include "dqcc/simulator.hpp"
