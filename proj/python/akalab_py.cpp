// Copyright 2026 The aka-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "akalab/bytes.hpp"
#include "akalab/cli.hpp"
#include "akalab/errors.hpp"
#include "akalab/hash.hpp"
#include "akalab/reports.hpp"
#include "akalab/scenario.hpp"

namespace py = pybind11;
using namespace akalab;

namespace {

Protocol parse_protocol(const std::string& name) {
  if (name == "li") return Protocol::Li;
  if (name == "dpi") return Protocol::Dpi;
  throw Error("unknown protocol: " + name);
}

py::dict meter_dict(const HashMeter& meter) {
  py::dict out;
  for (const auto& [key, n] : meter.counts()) {
    out[py::str(std::string(to_string(key.first)) + "." + std::string(to_string(key.second)))] = n;
  }
  return out;
}

py::dict row_dict(const ComplexityRow& row) {
  py::dict out;
  out["user_login"] = row.user_login;
  out["user_ake"] = row.user_ake;
  out["server_ake"] = row.server_ake;
  out["cs_ake"] = row.cs_ake;
  out["cs_optional"] = row.cs_optional;
  return out;
}

py::dict attack(const std::string& name, const std::string& protocol, std::uint64_t seed) {
  ScenarioConfig config;
  config.seed = seed;
  const auto report = run_attack(parse_attack(name), parse_protocol(protocol), config);
  py::dict out;
  out["verdict"] = std::string(to_string(report.verdict));
  py::list facts;
  for (const auto& [k, v] : report.facts) facts.append(py::make_tuple(k, v));
  out["facts"] = facts;
  py::list deceived;
  for (auto party : report.deceived) deceived.append(std::string(to_string(party)));
  out["deceived"] = deceived;
  if (report.rejected) {
    out["rejected"] = py::make_tuple(std::string(to_string(report.rejected->first)),
                                     std::string(to_string(report.rejected->second)));
  } else {
    out["rejected"] = py::none();
  }
  out["attacker_sk"] = report.attacker_sk ? py::object(py::str(report.attacker_sk->hex())) : py::none();
  out["victim_sk"] = report.victim_sk ? py::object(py::str(report.victim_sk->hex())) : py::none();
  out["attacker_work"] = meter_dict(report.attacker_work);
  out["victim_work"] = meter_dict(report.victim_work);
  return out;
}

}  // namespace

PYBIND11_MODULE(_akalab, m) {
  m.doc() = "Authenticated key agreement lab: honest sessions, attacks and hash counts.";

  py::register_exception<Error>(m, "AkalabError");

  m.def("sha256", [](py::bytes data) {
    const std::string raw = data;
    const Bytes bytes(raw.begin(), raw.end());
    const auto digest = sha256(ByteView(bytes));
    return py::bytes(reinterpret_cast<const char*>(digest.bytes().data()), digest.bytes().size());
  }, py::arg("data"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");

  m.def("run_attack", &attack, py::arg("name"), py::arg("protocol"), py::arg("seed") = 0);

  m.def("measure_complexity", [](const std::string& protocol, std::uint64_t seed) {
    const auto cmp = measure_complexity(parse_protocol(protocol), seed);
    py::dict out;
    out["measured"] = row_dict(cmp.measured);
    out["published"] = row_dict(cmp.published);
    out["all_ok"] = cmp.all_ok();
    return out;
  }, py::arg("protocol"), py::arg("seed") = 0);

  m.def("security_matrix", [](std::uint64_t seed) {
    ScenarioConfig config;
    config.seed = seed;
    py::list rows;
    for (const auto& row : security_matrix(config)) {
      py::dict d;
      d["label"] = row.label;
      d["dpi"] = row.dpi;
      d["li"] = row.li;
      d["pass"] = row.pass_dpi() && row.pass_li();
      rows.append(d);
    }
    return rows;
  }, py::arg("seed") = 0);
}
