//
// Copyright 2026 The privboost Authors.
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
//

// Python bindings. Samples cross the boundary as (X, y) numpy arrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privboost/data.h"
#include "privboost/error.h"
#include "privboost/halfspace.h"
#include "privboost/measures.h"
#include "privboost/privacy.h"
#include "privboost/rng.h"
#include "privboost/sample.h"

namespace py = pybind11;

namespace privboost {
namespace {

using Matrix = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Labels = py::array_t<int, py::array::c_style | py::array::forcecast>;

LabeledSample ToSample(const Matrix& x, const Labels& y) {
  if (x.ndim() != 2 || y.ndim() != 1 || x.shape(0) != y.shape(0)) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected X of shape (n, d) and y of shape (n,)");
  }
  const auto d = static_cast<std::size_t>(x.shape(1));
  return LabeledSample(d, std::vector<double>(x.data(), x.data() + x.size()),
                       std::vector<int>(y.data(), y.data() + y.size()));
}

py::tuple FromSample(const LabeledSample& s) {
  Matrix x(std::vector<py::ssize_t>{static_cast<py::ssize_t>(s.size()),
                                    static_cast<py::ssize_t>(s.dim())});
  std::copy(s.all_features().begin(), s.all_features().end(), x.mutable_data());
  Labels y(std::vector<py::ssize_t>{static_cast<py::ssize_t>(s.size())});
  std::copy(s.labels().begin(), s.labels().end(), y.mutable_data());
  return py::make_tuple(x, y);
}

py::tuple GenerateData(std::int64_t d, std::int64_t n, double tau,
                       std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.d = d;
  cfg.n = n;
  cfg.tau = tau;
  cfg.seed = seed;
  const MarginSample m = GenerateMarginSample(cfg);
  const auto z = m.target.z();
  return py::make_tuple(FromSample(m.sample)[0], FromSample(m.sample)[1],
                        std::vector<double>(z.begin(), z.end()));
}

py::tuple AddLabelNoise(const Matrix& x, const Labels& y, double eta,
                        std::uint64_t seed) {
  const NoisySample noisy = ApplyRcn(ToSample(x, y), NoiseConfig{eta, seed});
  return py::make_tuple(FromSample(noisy.sample)[1], noisy.flipped);
}

py::dict Train(const Matrix& x, const Labels& y, double alpha, double beta,
               double tau, std::optional<double> sigma,
               std::optional<std::int64_t> rounds, std::uint64_t seed) {
  HsStlParams params;
  params.alpha = alpha;
  params.beta = beta;
  params.tau = tau;
  params.sigma_override = sigma;
  params.rounds_override = rounds;
  params.record_trace = false;
  const LabeledSample sample = ToSample(x, y);
  HsStlResult r;
  {
    py::gil_scoped_release release;
    Rng rng = Rng(seed).Derive("boost");
    r = HsStl(sample, params, rng);
  }
  const auto z = r.hypothesis.z();
  py::dict out;
  out["z"] = std::vector<double>(z.begin(), z.end());
  out["kappa"] = r.plan.kappa;
  out["lambda"] = r.plan.lambda;
  out["rounds"] = r.plan.rounds;
  out["sigma"] = r.plan.sigma;
  out["rho_total"] = r.ledger.rho_total();
  out["warnings"] = r.warnings;
  return out;
}

double Error01(const std::vector<double>& z, const Matrix& x, const Labels& y) {
  return EmpiricalError(LinearHypothesis(z), ToSample(x, y));
}

std::vector<double> Project(const std::vector<double>& weights, double kappa) {
  const BoundedMeasure m =
      BregmanProjectDense(BoundedMeasure(weights), DensityParam(kappa));
  return std::vector<double>(m.weights().begin(), m.weights().end());
}

}  // namespace
}  // namespace privboost

PYBIND11_MODULE(_core, m) {
  using namespace privboost;
  m.doc() = "Private smooth boosting for large-margin halfspaces.";

  static py::exception<Error> error_type(m, "PrivboostError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg =
          std::string(ErrorCodeName(e.code())) + ": " + e.what();
      PyErr_SetString(error_type.ptr(), msg.c_str());
    }
  });

  m.def("generate_data", &GenerateData, py::arg("d"), py::arg("n"),
        py::arg("tau"), py::arg("seed") = 0,
        "Returns (X, y, u) for a tau-margin sample with hidden target u.");
  m.def("add_label_noise", &AddLabelNoise, py::arg("X"), py::arg("y"),
        py::arg("eta"), py::arg("seed") = 0,
        "Returns (noisy_y, flipped_indices).");
  m.def("train", &Train, py::arg("X"), py::arg("y"), py::arg("alpha") = 0.2,
        py::arg("beta") = 0.1, py::arg("tau") = 0.3,
        py::arg("sigma") = py::none(), py::arg("rounds") = py::none(),
        py::arg("seed") = 0);
  m.def("error", &Error01, py::arg("z"), py::arg("X"), py::arg("y"),
        "Fraction of rows with sign(z . x) != y.");
  m.def("project_dense", &Project, py::arg("weights"), py::arg("kappa"));
  m.def(
      "zcdp_to_dp",
      [](double rho, double delta) { return ZcdpToDp(rho, delta).epsilon; },
      py::arg("rho"), py::arg("delta"));
  m.def("weak_learner_rho", &WeakLearnerRho, py::arg("kappa"), py::arg("n"),
        py::arg("s"), py::arg("sigma"));
  m.def(
      "calibrate_sigma",
      [](double epsilon, double delta, std::int64_t rounds, double kappa,
         std::int64_t n, bool exact) {
        return CalibrateSigma(ApproxDpParams::Make(epsilon, delta), rounds,
                              kappa, n, exact);
      },
      py::arg("epsilon"), py::arg("delta"), py::arg("rounds"), py::arg("kappa"),
      py::arg("n"), py::arg("exact") = false);
}
