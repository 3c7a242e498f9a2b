#pragma once

#include "dqcc/errors.hpp"
#include "dqcc/network.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <string_view>

namespace dqcc {

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
  throw parse_error("field '" + field + "': " + what);
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    field_error(path + key, "missing");
  }
  return obj.at(key);
}

inline std::vector<PhysQubit> qubit_list(const json& j, const std::string& field) {
  if (!j.is_array()) {
    field_error(field, "expected an array of qubit ids");
  }
  std::vector<PhysQubit> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) {
      field_error(field, "expected non-negative integers");
    }
    out.push_back(v.get<PhysQubit>());
  }
  return out;
}

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  const auto end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

} // namespace detail

/// Parses and validates a network description (JSON).
inline NetworkConfig parse_network_config(std::string_view text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what(), detail::line_of(text, e.byte));
  }
  if (!root.is_object()) {
    throw parse_error("top level must be an object");
  }
  NetworkConfig net;
  const auto& qpus = detail::require(root, "qpus", "");
  if (!qpus.is_array()) {
    detail::field_error("qpus", "expected an array");
  }
  for (std::size_t i = 0; i < qpus.size(); ++i) {
    const auto path = "qpus[" + std::to_string(i) + "].";
    const auto& jq = qpus[i];
    QPUConfig q;
    const auto& id = detail::require(jq, "id", path);
    if (!id.is_string()) {
      detail::field_error(path + "id", "expected a string");
    }
    q.id = id.get<std::string>();
    q.data_qubits = detail::qubit_list(detail::require(jq, "data_qubits", path), path + "data_qubits");
    q.comm_qubits = detail::qubit_list(detail::require(jq, "comm_qubits", path), path + "comm_qubits");
    const auto& edges = detail::require(jq, "edges", path);
    if (!edges.is_array()) {
      detail::field_error(path + "edges", "expected an array");
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      const auto field = path + "edges[" + std::to_string(k) + "]";
      const bool shape_ok = e.is_array() && (e.size() == 2 || e.size() == 3) && e[0].is_number_unsigned() &&
                            e[1].is_number_unsigned() && (e.size() == 2 || e[2] == "directed");
      if (!shape_ok) {
        detail::field_error(field, "expected [a, b] or [a, b, \"directed\"]");
      }
      q.edges.push_back({e[0].get<PhysQubit>(), e[1].get<PhysQubit>(), e.size() == 3});
    }
    net.qpus.push_back(std::move(q));
  }

  if (root.contains("channels")) {
    const auto& chans = root.at("channels");
    if (!chans.is_array()) {
      detail::field_error("channels", "expected an array");
    }
    for (std::size_t i = 0; i < chans.size(); ++i) {
      const auto path = "channels[" + std::to_string(i) + "].";
      const auto& jc = chans[i];
      Channel ch;
      const auto endpoint = [&](const char* key) -> QpuIndex {
        const auto& v = detail::require(jc, key, path);
        if (!v.is_string()) {
          detail::field_error(path + key, "expected a QPU id");
        }
        const auto name = v.get<std::string>();
        for (QpuIndex k = 0; k < net.qpus.size(); ++k) {
          if (net.qpus[k].id == name) {
            return k;
          }
        }
        throw validation_error("channel " + std::to_string(i) + ": unknown endpoint '" + name + "'");
      };
      ch.a = endpoint("a");
      ch.b = endpoint("b");
      const auto& cap = detail::require(jc, "capacity", path);
      if (!cap.is_number_unsigned()) {
        detail::field_error(path + "capacity", "expected a non-negative integer");
      }
      ch.capacity = cap.get<std::size_t>();
      ch.comm_a = detail::qubit_list(detail::require(jc, "comm_a", path), path + "comm_a");
      ch.comm_b = detail::qubit_list(detail::require(jc, "comm_b", path), path + "comm_b");
      net.channels.push_back(std::move(ch));
    }
  }
  if (root.contains("epr_gen_interval")) {
    const auto& v = root.at("epr_gen_interval");
    if (!v.is_number_integer()) {
      detail::field_error("epr_gen_interval", "expected an integer");
    }
    net.epr_gen_interval = v.get<std::int64_t>();
  }
  if (root.contains("mean_decoherence_time")) {
    const auto& v = root.at("mean_decoherence_time");
    if (!v.is_number()) {
      detail::field_error("mean_decoherence_time", "expected a number");
    }
    net.mean_decoherence_time = v.get<double>();
  }
  validate(net);
  return net;
}

inline std::string serialize_network_config(const NetworkConfig& net) {
  using detail::json;
  json root;
  root["qpus"] = json::array();
  for (const auto& q : net.qpus) {
    json jq;
    jq["id"] = q.id;
    jq["data_qubits"] = q.data_qubits;
    jq["comm_qubits"] = q.comm_qubits;
    jq["edges"] = json::array();
    for (const auto& e : q.edges) {
      auto je = json::array({e.a, e.b});
      if (e.directed) {
        je.push_back("directed");
      }
      jq["edges"].push_back(std::move(je));
    }
    root["qpus"].push_back(std::move(jq));
  }
  root["channels"] = json::array();
  for (const auto& ch : net.channels) {
    root["channels"].push_back({{"a", net.qpus.at(ch.a).id},
                                {"b", net.qpus.at(ch.b).id},
                                {"capacity", ch.capacity},
                                {"comm_a", ch.comm_a},
                                {"comm_b", ch.comm_b}});
  }
  root["epr_gen_interval"] = net.epr_gen_interval;
  root["mean_decoherence_time"] = net.mean_decoherence_time;
  return root.dump(2) + "\n";
}

} // namespace dqcc
