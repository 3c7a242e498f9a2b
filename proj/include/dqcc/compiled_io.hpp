#pragma once

#include "dqcc/circuit_io.hpp"
#include "dqcc/distributed.hpp"
#include "dqcc/errors.hpp"
#include "dqcc/network.hpp"
#include "dqcc/router.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dqcc {

namespace detail {

inline std::string origin_suffix(GateOrigin o) {
  switch (o) {
  case GateOrigin::program: return "";
  case GateOrigin::routing: return " routing";
  case GateOrigin::remote: return " remote";
  }
  return "";
}

inline std::string remote_line(const RemoteOp& r, const std::vector<std::string>& ids) {
  return std::string(remote_keyword(r.kind)) + " q" + std::to_string(r.qubit) + " " + ids.at(r.source_qpu) + "->" +
         ids.at(r.target_qpu) + " ch" + std::to_string(r.channel);
}

inline std::string covers_suffix(const RemoteOp& r) {
  if (r.covered.empty()) {
    return "";
  }
  std::string s = " covers";
  for (auto g : r.covered) {
    s += " " + std::to_string(g);
  }
  return s;
}

} // namespace detail

/// Scheduler output as text: logical gate lines tagged with the executing
/// QPU, interleaved with `teledata|catent|catdisent qK SRC->DST chN` lines.
inline std::string serialize_distributed(const DistributedCircuit& dc, const NetworkConfig& net) {
  std::vector<std::string> ids;
  for (const auto& q : net.qpus) {
    ids.push_back(q.id);
  }
  std::string out = "qubits " + std::to_string(dc.num_qubits) + "\n";
  if (dc.num_cbits > 0) {
    out += "cbits " + std::to_string(dc.num_cbits) + "\n";
  }
  for (Qubit q = 0; q < dc.initial.partition.size(); ++q) {
    out += "assign q" + std::to_string(q) + " " + ids.at(dc.initial.partition[q]) + "\n";
  }
  for (const auto& op : dc.ops) {
    if (op.is_remote) {
      out += detail::remote_line(op.remote, ids) + detail::covers_suffix(op.remote) + "\n";
    } else {
      out += format_gate(op.gate) + " @" + ids.at(op.qpu) + "\n";
    }
  }
  out += "epr_pairs " + std::to_string(dc.epr_pairs) + "\n";
  return out;
}

/// Compiled circuit as text. Header: register sizes, QPU blocks and the
/// initial layout; body: physical gate lines with `@QPU` and origin tags,
/// each remote op announced by its directive line and gate span; footer: the
/// final layout block closed by `end`.
inline std::string serialize_compiled(const CompiledCircuit& cc) {
  std::string out = "qubits " + std::to_string(cc.circuit.num_qubits) + "\n";
  out += "cbits " + std::to_string(cc.circuit.num_cbits) + "\n";
  out += "logical " + std::to_string(cc.num_logical) + " program_cbits " + std::to_string(cc.program_cbits) + "\n";
  for (std::size_t k = 0; k < cc.qpu_ids.size(); ++k) {
    out += "qpu " + cc.qpu_ids[k] + " " + std::to_string(cc.offsets[k]) + " " + std::to_string(cc.sizes[k]) + "\n";
  }
  for (std::size_t q = 0; q < cc.initial.size(); ++q) {
    out += "initial " + std::to_string(q) + " " + std::to_string(cc.initial[q]) + "\n";
  }
  std::size_t next_remote = 0;
  for (std::size_t i = 0; i <= cc.circuit.gates.size(); ++i) {
    while (next_remote < cc.remote.size() && cc.remote[next_remote].first_gate == i) {
      const auto& r = cc.remote[next_remote++];
      out += detail::remote_line(r.op, cc.qpu_ids) + " pair " + std::to_string(r.pair) + " comm " +
             std::to_string(r.local_comm) + " " + std::to_string(r.remote_comm) + " gates " +
             std::to_string(r.last_gate - r.first_gate) + detail::covers_suffix(r.op) + "\n";
    }
    if (i == cc.circuit.gates.size()) {
      break;
    }
    const auto& g = cc.circuit.gates[i];
    out += format_gate(g) + " @" + cc.qpu_ids.at(cc.qpu_of(g.qubits[0])) + detail::origin_suffix(g.origin) + "\n";
  }
  out += "final\n";
  for (std::size_t q = 0; q < cc.final.size(); ++q) {
    out += "  " + std::to_string(q) + " " + std::to_string(cc.final[q]) + "\n";
  }
  out += "end\n";
  return out;
}

inline CompiledCircuit parse_compiled(std::string_view text) {
  CompiledCircuit cc;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  bool in_final = false;
  bool ended = false;
  const auto num = [&](const std::string& t) {
    const auto v = detail::parse_int<std::size_t>(t);
    if (!v) {
      throw parse_error("expected a number, got '" + t + "'", lineno);
    }
    return *v;
  };
  const auto qpu_index = [&](const std::string& id) -> QpuIndex {
    for (QpuIndex k = 0; k < cc.qpu_ids.size(); ++k) {
      if (cc.qpu_ids[k] == id) {
        return k;
      }
    }
    throw parse_error("unknown QPU '" + id + "'", lineno);
  };
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto hash = line.find('#');
    const auto tok = detail::split_ws(line.substr(0, hash));
    if (tok.empty()) {
      continue;
    }
    if (ended) {
      throw parse_error("content after 'end'", lineno);
    }
    const auto& kw = tok[0];
    if (in_final) {
      if (kw == "end") {
        ended = true;
        continue;
      }
      if (tok.size() != 2 || num(tok[0]) != cc.final.size()) {
        throw parse_error("expected '<logical> <physical>' in final block", lineno);
      }
      cc.final.push_back(static_cast<PhysQubit>(num(tok[1])));
      continue;
    }
    if (kw == "qubits" && tok.size() == 2) {
      cc.circuit.num_qubits = num(tok[1]);
    } else if (kw == "cbits" && tok.size() == 2) {
      cc.circuit.num_cbits = num(tok[1]);
    } else if (kw == "logical" && tok.size() == 4 && tok[2] == "program_cbits") {
      cc.num_logical = num(tok[1]);
      cc.program_cbits = num(tok[3]);
    } else if (kw == "qpu" && tok.size() == 4) {
      cc.qpu_ids.push_back(tok[1]);
      cc.offsets.push_back(num(tok[2]));
      cc.sizes.push_back(num(tok[3]));
    } else if (kw == "initial" && tok.size() == 3) {
      if (num(tok[1]) != cc.initial.size()) {
        throw parse_error("initial layout lines out of order", lineno);
      }
      cc.initial.push_back(static_cast<PhysQubit>(num(tok[2])));
    } else if (kw == "final" && tok.size() == 1) {
      in_final = true;
    } else if (kw == "teledata" || kw == "catent" || kw == "catdisent") {
      // KIND qN SRC->DST chN pair P comm A B gates G [covers ...]
      if (tok.size() < 11 || tok[1].size() < 2 || tok[1][0] != 'q' || tok[3].rfind("ch", 0) != 0 ||
          tok[4] != "pair" || tok[6] != "comm" || tok[9] != "gates") {
        throw parse_error("malformed remote directive", lineno);
      }
      RemoteRecord r;
      r.op.kind = kw == "teledata" ? RemoteKind::teledata : kw == "catent" ? RemoteKind::catent : RemoteKind::catdisent;
      r.op.qubit = static_cast<Qubit>(num(tok[1].substr(1)));
      const auto arrow = tok[2].find("->");
      if (arrow == std::string::npos) {
        throw parse_error("expected SRC->DST", lineno);
      }
      r.op.source_qpu = qpu_index(tok[2].substr(0, arrow));
      r.op.target_qpu = qpu_index(tok[2].substr(arrow + 2));
      r.op.channel = num(tok[3].substr(2));
      r.pair = num(tok[5]);
      r.local_comm = static_cast<PhysQubit>(num(tok[7]));
      r.remote_comm = static_cast<PhysQubit>(num(tok[8]));
      r.first_gate = cc.circuit.gates.size();
      r.last_gate = r.first_gate + num(tok[10]);
      std::size_t i = 11;
      if (i < tok.size()) {
        if (tok[i] != "covers") {
          throw parse_error("unexpected token '" + tok[i] + "'", lineno);
        }
        for (++i; i < tok.size(); ++i) {
          r.op.covered.push_back(num(tok[i]));
        }
      }
      cc.remote.push_back(std::move(r));
    } else {
      auto parsed = parse_gate_line(tok, lineno);
      if (!parsed) {
        throw parse_error("unknown line '" + kw + "'", lineno);
      }
      const auto& g = parsed->gate;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.qubits[k] >= cc.circuit.num_qubits) {
          throw parse_error("qubit " + std::to_string(g.qubits[k]) + " out of range", lineno);
        }
      }
      cc.circuit.gates.push_back(g);
    }
  }
  if (!ended) {
    throw parse_error("missing final layout block", lineno);
  }
  if (cc.initial.size() != cc.num_logical || cc.final.size() != cc.num_logical) {
    throw parse_error("layout blocks do not cover every logical qubit");
  }
  for (const auto& r : cc.remote) {
    if (r.last_gate > cc.circuit.gates.size()) {
      throw parse_error("remote directive spans past the end of the circuit");
    }
  }
  validate(cc.circuit);
  return cc;
}

} // namespace dqcc
