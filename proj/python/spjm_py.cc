// Copyright 2026 The spjm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spjm/bench.h"
#include "spjm/datagen.h"
#include "spjm/error.h"
#include "spjm/plan_space.h"
#include "spjm/session.h"
#include "spjm/verify.h"

namespace py = pybind11;

namespace spjm {
namespace {

py::dict RunToDict(const QueryRun& run) {
  py::dict d;
  d["columns"] = run.table.columns;
  d["rows"] = run.table.rows;
  d["optimize_us"] = run.optimize_us;
  d["execute_us"] = run.execute_us;
  return d;
}

py::dict ReportToDict(const VerifyReport& r) {
  py::dict d;
  d["cases"] = r.cases;
  d["executions"] = r.executions;
  d["trees"] = r.trees;
  d["illegal_trees"] = r.illegal_trees;
  d["failures"] = r.failures;
  d["messages"] = r.messages;
  return d;
}

// Big counts cross the boundary as Python ints.
py::int_ ToPyInt(const BigInt& v) { return py::int_(py::str(v.str())); }

}  // namespace

void BindModule(py::module_& m) {
  m.doc() = "SQL/PGQ engine with relational and graph-aware optimizers";

  static PyObject* error_type = PyErr_NewException("spjm._core.Error", PyExc_RuntimeError, nullptr);
  m.attr("Error") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(e.what());
      exc.attr("code") = ErrorCodeName(e.code());
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<Session>(m, "Session")
      .def(py::init([](const std::string& manifest, bool graph_index, const std::string& optimizer,
                       std::optional<std::string> mode, int k, int64_t timeout_ms) {
             SessionConfig c;
             c.graph_index = graph_index;
             c.optimizer = optimizer;
             if (mode) {
               c.mode = ParseMatchMode(*mode);
               if (!c.mode) throw Error(ErrorCode::kInvalidArgument, "unknown mode: " + *mode);
             }
             c.k = k;
             c.timeout_ms = timeout_ms;
             CheckConfig(c);
             auto s = std::make_unique<Session>(c);
             if (!manifest.empty()) s->LoadManifest(manifest);
             return s;
           }),
           py::arg("manifest") = "", py::arg("graph_index") = true, py::arg("optimizer") = "converged",
           py::arg("mode") = py::none(), py::arg("k") = 3, py::arg("timeout_ms") = 0)
      .def("load_manifest", &Session::LoadManifest, py::arg("path"))
      .def("create_graphs",
           [](Session& s, const std::string& ddl) {
             std::vector<std::string> names;
             for (const auto& g : s.CreateGraphs(ddl)) names.push_back(g->name());
             return names;
           },
           py::arg("ddl"))
      .def("relations", [](const Session& s) { return s.catalog().RelationNames(); })
      .def("graphs", [](const Session& s) { return s.catalog().GraphNames(); })
      .def("query",
           [](Session& s, const std::string& text, std::optional<std::string> optimizer) {
             BoundQuery q = s.Bind(text);
             return RunToDict(s.Run(q, optimizer.value_or(s.config().optimizer)));
           },
           py::arg("text"), py::arg("optimizer") = py::none())
      .def("explain", &Session::Explain, py::arg("text"))
      .def("verify",
           [](Session& s, const std::vector<std::string>& queries) { return ReportToDict(VerifyCorpus(s, queries)); },
           py::arg("queries"));

  m.def(
      "generate_social",
      [](const std::string& dir, int persons, uint64_t seed) {
        GenConfig c;
        c.persons = persons;
        c.seed = seed;
        GenStats st = GenerateSocial(c, dir);
        py::dict d;
        d["persons"] = st.persons;
        d["messages"] = st.messages;
        d["places"] = st.places;
        d["knows"] = st.knows;
        d["likes"] = st.likes;
        return d;
      },
      py::arg("dir"), py::arg("persons") = 1000, py::arg("seed") = 42);

  m.def(
      "verify_random",
      [](int graphs, int patterns, uint64_t seed) {
        VerifyConfig c;
        c.graphs = graphs;
        c.patterns_per_graph = patterns;
        c.seed = seed;
        return ReportToDict(VerifyRandom(c));
      },
      py::arg("graphs") = 5, py::arg("patterns") = 4, py::arg("seed") = 1);

  m.def(
      "plan_space",
      [](const std::string& family, int size) {
        PatternGraph p = FamilyPattern(family, size);
        return py::make_tuple(ToPyInt(CountAgnostic(p)), ToPyInt(CountAware(p)));
      },
      py::arg("family"), py::arg("size"));
}
}  // namespace spjm

PYBIND11_MODULE(_core, m) { spjm::BindModule(m); }
