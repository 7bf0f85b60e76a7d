// Copyright 2026 The qknn-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qknn/bench.hpp"
#include "qknn/errors.hpp"
#include "qknn/grover.hpp"
#include "qknn/knn.hpp"
#include "qknn/qknn.hpp"
#include "qknn/sim/ops.hpp"
#include "qknn/swap_test.hpp"

namespace py = pybind11;
using namespace qknn;

namespace {

sim::SparseState state_from_amplitudes(const std::vector<std::complex<double>>& amps) {
    auto s = sim::SparseState::from_dense(amps);
    s.normalize();
    return s;
}

quantum::TrainingSet training_set(const std::vector<std::string>& vectors, const std::vector<unsigned>& labels,
                                  unsigned num_classes) {
    if (vectors.size() != labels.size()) throw DomainError("vectors and labels differ in length");
    quantum::TrainingSet ts;
    ts.num_classes = num_classes;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        ts.items.push_back({BitVector::from_string(vectors[i]), labels[i]});
    }
    ts.num_features = ts.items.empty() ? 0 : static_cast<unsigned>(ts.items[0].vector.size());
    return ts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Statevector simulation, swap test, Grover search and Hamming-distance quantum KNN.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<NoNeighborError>(m, "NoNeighborError", PyExc_RuntimeError);

    m.def(
        "swap_test_p0",
        [](const std::vector<std::complex<double>>& x, const std::vector<std::complex<double>>& y) {
            return swap::swap_test_p0(state_from_amplitudes(x), state_from_amplitudes(y));
        },
        py::arg("x"), py::arg("y"), "Exact P(ancilla = 0) for two amplitude vectors (normalized on input).");
    m.def(
        "fidelity_from_p0", [](double p0) {
            const auto f = swap::fidelity_from_p0(p0);
            return py::make_tuple(f.fidelity, f.clamped);
        },
        py::arg("p0"), "Returns (fidelity, clamped).");
    m.def("quantum_euclidean_distance", &swap::quantum_euclidean_distance, py::arg("fidelity"));

    m.def(
        "grover_search",
        [](unsigned n, std::uint64_t marked, std::optional<unsigned> iterations, std::uint64_t seed) {
            Rng rng(seed);
            const auto r = grover::grover_search({n, marked, iterations.value_or(grover::optimal_iterations(n))}, rng);
            return py::make_tuple(r.probabilities, r.sampled);
        },
        py::arg("num_qubits"), py::arg("marked"), py::arg("iterations") = py::none(), py::arg("seed") = 0,
        "Returns (probabilities, sampled outcome).");
    m.def("optimal_iterations", &grover::optimal_iterations, py::arg("num_qubits"));

    m.def(
        "hamming_distance",
        [](const std::string& a, const std::string& b) {
            return classical::hamming_distance(BitVector::from_string(a), BitVector::from_string(b));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "euclidean_distance",
        [](const std::vector<double>& a, const std::vector<double>& b) { return classical::euclidean_distance(a, b); },
        py::arg("a"), py::arg("b"));
    m.def(
        "knn_predict",
        [](std::vector<std::vector<double>> train_x, std::vector<unsigned> train_y, const std::vector<double>& x,
           unsigned k) {
            return classical::KnnModel(std::move(train_x), std::move(train_y), classical::Metric::Euclidean, k)
                .predict(x);
        },
        py::arg("train_x"), py::arg("train_y"), py::arg("x"), py::arg("k"));
    m.def("suggest_k", &classical::suggest_k, py::arg("num_training"), py::arg("binary") = true);

    m.def(
        "qknn_classify",
        [](const std::vector<std::string>& vectors, const std::vector<unsigned>& labels, const std::string& test,
           unsigned threshold, std::optional<std::uint64_t> shots, const std::string& backend, bool fallback,
           std::uint64_t seed, unsigned num_classes) {
            quantum::QknnConfig cfg;
            cfg.threshold = threshold;
            cfg.shots = shots;
            if (backend == "dense") {
                cfg.backend = quantum::Backend::Dense;
            } else if (backend != "sparse") {
                throw DomainError("backend must be 'sparse' or 'dense'");
            }
            cfg.fallback = fallback;
            cfg.seed = seed;
            const auto r = quantum::classify(training_set(vectors, labels, num_classes), BitVector::from_string(test), cfg);
            py::dict out;
            out["predicted"] = r.predicted;
            out["class_distribution"] = r.class_distribution;
            out["acceptance_probability"] = r.acceptance_probability;
            out["effective_threshold"] = r.effective_threshold;
            out["accepted_shots"] = r.accepted_shots;
            return out;
        },
        py::arg("vectors"), py::arg("labels"), py::arg("test"), py::arg("threshold") = 1, py::arg("shots") = py::none(),
        py::arg("backend") = "sparse", py::arg("fallback") = true, py::arg("seed") = 0, py::arg("num_classes") = 2);
    m.def(
        "calibrate_threshold",
        [](const std::vector<std::string>& vectors, const std::vector<unsigned>& labels, const std::string& test,
           unsigned k, unsigned num_classes) {
            return quantum::calibrate_threshold(training_set(vectors, labels, num_classes),
                                                BitVector::from_string(test), k);
        },
        py::arg("vectors"), py::arg("labels"), py::arg("test"), py::arg("k"), py::arg("num_classes") = 2);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<std::string> full{"qknn-lab"};
            full.insert(full.end(), args.begin(), args.end());
            std::vector<const char*> argv;
            for (const auto& a : full) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = bench::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process. Returns (exit_code, stdout, stderr).");

    m.attr("__version__") = bench::kToolVersion;
}
