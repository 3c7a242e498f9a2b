#pragma once

#include "dqcc/circuit.hpp"
#include "dqcc/network.hpp"
#include "dqcc/partition.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dqcc {

enum class RemoteKind : std::uint8_t {
  teledata, // teleport a data qubit to another QPU
  catent,   // share a control qubit with another QPU
  catdisent // end a share opened by catent
};

[[nodiscard]] inline std::string_view remote_keyword(RemoteKind k) noexcept {
  switch (k) {
  case RemoteKind::teledata: return "teledata";
  case RemoteKind::catent: return "catent";
  case RemoteKind::catdisent: return "catdisent";
  }
  return "?";
}

struct RemoteOp {
  RemoteKind kind{RemoteKind::teledata};
  Qubit qubit{0};
  QpuIndex source_qpu{0}; // home of `qubit` when the op runs
  QpuIndex target_qpu{0};
  ChannelIndex channel{0};
  std::vector<std::size_t> covered; // source gate indices the opening op was chosen for

  [[nodiscard]] std::size_t epr_cost() const noexcept { return kind == RemoteKind::catdisent ? 0 : 1; }

  friend bool operator==(const RemoteOp&, const RemoteOp&) = default;
};

/// One entry of a distributed circuit: a logical gate with the QPU that runs
/// it, or a remote operation.
struct DistributedOp {
  bool is_remote{false};
  Gate gate;               // logical operands
  std::size_t source{0};   // index of the gate in the input circuit
  QpuIndex qpu{0};         // executing QPU
  RemoteOp remote;

  friend bool operator==(const DistributedOp&, const DistributedOp&) = default;
};

enum class Strategy : std::uint8_t { mixed, telegate_only };

[[nodiscard]] inline std::string_view strategy_name(Strategy s) noexcept {
  return s == Strategy::mixed ? "mixed" : "telegate";
}

/// Outcome of one strategy window: EPR pairs of both variants and the one kept.
struct WindowRecord {
  std::size_t first{0};
  std::size_t last{0}; // one past the last gate
  std::size_t epr_mixed{0};
  std::size_t epr_telegate{0};
  Strategy kept{Strategy::telegate_only};
  bool telegate_feasible{true}; // false when TeleGate alone could not cover the window

  friend bool operator==(const WindowRecord&, const WindowRecord&) = default;
};

struct DistributedCircuit {
  std::size_t num_qubits{0};
  std::size_t num_cbits{0};
  std::vector<DistributedOp> ops;
  Assignment initial;
  Assignment final;
  std::size_t epr_pairs{0}; // counted by the scheduler as it commits ops
  std::vector<WindowRecord> windows;

  [[nodiscard]] std::size_t count(RemoteKind k) const noexcept {
    std::size_t n = 0;
    for (const auto& op : ops) {
      n += op.is_remote && op.remote.kind == k ? 1 : 0;
    }
    return n;
  }

  friend bool operator==(const DistributedCircuit&, const DistributedCircuit&) = default;
};

} // namespace dqcc
