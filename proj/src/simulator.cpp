// Copyright 2026 The aqpe Authors
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

#include "aqpe/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <Eigen/Eigenvalues>

#include "aqpe/error.hpp"

namespace aqpe {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Gate kernels on a full register: physical index in the low `L` bits,
// ancilla at bit L.
struct Register {
  std::size_t L;
  std::size_t half;
  std::size_t dim;
  const std::vector<double>* h;

  explicit Register(const Circuit& c)
      : L(c.qubits),
        half(std::size_t{1} << c.qubits),
        dim(std::size_t{2} << c.qubits),
        h(&c.z_coefficients) {}

  void rotation(Complex* a, const PauliString& p, double angle,
                bool controlled) const {
    const Complex co(std::cos(angle), 0.0);
    const Complex is(0.0, std::sin(angle));
    const std::uint64_t xm = p.x_mask();
    const std::size_t lo = controlled ? half : 0;
    if (xm == 0) {
      for (std::size_t x = lo; x < dim; ++x) {
        a[x] *= co + is * pauli_amplitude(p, x);
      }
      return;
    }
    for (std::size_t x = lo; x < dim; ++x) {
      const std::size_t y = x ^ xm;
      if (y < x) continue;
      const Complex ax = a[x];
      const Complex ay = a[y];
      a[x] = co * ax + is * pauli_amplitude(p, y) * ay;
      a[y] = co * ay + is * pauli_amplitude(p, x) * ax;
    }
  }

  void segment(Complex* a, double duration, std::uint64_t mask,
               bool controlled) const {
    if (mask == 0 || duration == 0.0) return;
    // exp(i t sum h_q Z_q) factorizes over qubits.
    std::vector<Complex> plus(L);
    for (std::size_t q = 0; q < L; ++q) {
      plus[q] = std::polar(1.0, duration * (*h)[q]);
    }
    for (std::size_t b = 0; b < half; ++b) {
      Complex f = 1.0;
      for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        const int bit = std::countr_zero(m);
        const std::size_t q = L - 1 - static_cast<std::size_t>(bit);
        f *= ((b >> bit) & 1) ? std::conj(plus[q]) : plus[q];
      }
      a[half + b] *= f;
      if (!controlled) a[b] *= f;
    }
  }

  void ancilla_phase(Complex* a, double angle) const {
    const Complex f = std::polar(1.0, angle);
    for (std::size_t b = 0; b < half; ++b) a[half + b] *= f;
  }

  // Applies the unitary part of a gate; `leaked` drops qubits from segments.
  void apply(const Gate& g, Complex* a, std::uint64_t leaked = 0) const {
    std::visit(Overloaded{
                   [&](const PauliRotation& r) {
                     rotation(a, r.string, r.angle, false);
                   },
                   [&](const ControlledPauliRotation& r) {
                     rotation(a, r.string, r.angle, true);
                   },
                   [&](const DiagonalSegment& s) {
                     segment(a, s.duration, s.mask & ~leaked, false);
                   },
                   [&](const ControlledDiagonalSegment& s) {
                     segment(a, s.duration, s.mask & ~leaked, true);
                   },
                   [&](const AncillaPhase& p) { ancilla_phase(a, p.angle); },
                   [](const auto&) {},
               },
               g);
  }

  std::vector<Complex> initial_state(const BasisState& hf) const {
    std::vector<Complex> a(dim, 0.0);
    a[hf.bits] = kInvSqrt2;
    a[half + hf.bits] = kInvSqrt2;
    return a;
  }
};

void check_circuit(const Circuit& c) {
  if (c.qubits + 1 > kCircuitQubitLimit) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "circuit with " + std::to_string(c.qubits + 1) +
                    " qubits exceeds the dense limit of " +
                    std::to_string(kCircuitQubitLimit));
  }
  if (c.initial.n != c.qubits || c.z_coefficients.size() != c.qubits) {
    throw Error(ErrorCode::kMismatchedQubitCount,
                "circuit register description is inconsistent");
  }
}

int basis_sign_of(const Circuit& c) {
  for (const auto& g : c.gates) {
    if (const auto* m = std::get_if<AncillaMeasureY>(&g)) return m->basis_sign;
  }
  return 1;
}

CircuitOutcome outcome_from_state(const Circuit& c, const Complex* a) {
  const std::size_t half = std::size_t{1} << c.qubits;
  CircuitOutcome out;
  out.qubits = c.qubits;
  out.basis_sign = basis_sign_of(c);
  out.prob.resize(half);
  out.y.resize(half);
  out.coh.resize(half);
  for (std::size_t b = 0; b < half; ++b) {
    out.prob[b] = std::norm(a[b]) + std::norm(a[half + b]);
    out.coh[b] = std::conj(a[b]) * a[half + b];
    out.y[b] = 2.0 * out.coh[b].imag();
  }
  out.overlap = 2.0 * std::conj(a[c.initial.bits]) * a[half + c.initial.bits];
  return out;
}

std::size_t sample_index(Rng& rng, const std::vector<double>& weights,
                         double total) {
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  // Rounding fallback: last index with positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0) return i;
  }
  return 0;
}

ShotRecord make_record(const CircuitMetadata& meta, int basis_sign, int bit,
                       std::uint64_t physical, std::uint64_t leaked) {
  ShotRecord r;
  r.ancilla_bit = bit;
  r.ancilla_y = basis_sign * (2 * bit - 1);
  r.physical_bits = physical;
  r.circuit_index = meta.index;
  r.branch = meta.branch;
  r.direction_sign = meta.direction_sign;
  r.leaked_mask = leaked;
  return r;
}

}  // namespace

void NoiseModel::validate() const {
  for (double v : {incoherent, coherent, leakage}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "noise rates must lie in [0, 1]");
    }
  }
}

double CircuitOutcome::ancilla_y() const {
  double s = 0.0;
  for (double v : y) s += v;
  return s;
}

CircuitOutcome CircuitOutcome::with_phase(double angle) const {
  CircuitOutcome out = *this;
  const Complex f = std::polar(1.0, angle);
  for (std::size_t b = 0; b < out.coh.size(); ++b) {
    out.coh[b] *= f;
    out.y[b] = 2.0 * out.coh[b].imag();
  }
  out.overlap *= f;
  return out;
}

std::vector<ShotRecord> CircuitOutcome::sample(
    Rng& rng, std::size_t shots, const CircuitMetadata& meta) const {
  // Joint distribution over (readout bit, physical string).
  std::vector<double> w(2 * prob.size());
  double total = 0.0;
  for (std::size_t b = 0; b < prob.size(); ++b) {
    const double p1 = std::max(0.0, p_one(b));
    const double p0 = std::max(0.0, prob[b] - p1);
    w[2 * b] = p0;
    w[2 * b + 1] = p1;
    total += p0 + p1;
  }
  std::vector<ShotRecord> out;
  out.reserve(shots);
  for (std::size_t i = 0; i < shots; ++i) {
    const std::size_t k = sample_index(rng, w, total);
    out.push_back(make_record(meta, basis_sign, static_cast<int>(k & 1), k >> 1, 0));
  }
  return out;
}

CircuitOutcome run_exact(const Circuit& c) {
  check_circuit(c);
  const Register reg(c);
  auto a = reg.initial_state(c.initial);
  for (const auto& g : c.gates) reg.apply(g, a.data());
  return outcome_from_state(c, a.data());
}

namespace {

// rho <- E(rho) for the two-qubit depolarizing channel on wires (a, b).
void depolarize(CMatrix& rho, int wa, int wb, double lambda) {
  const std::size_t dim = static_cast<std::size_t>(rho.rows());
  const std::size_t ma = std::size_t{1} << wa;
  const std::size_t mb = std::size_t{1} << wb;
  const std::size_t m = ma | mb;
  const std::size_t sub[4] = {0, ma, mb, m};
  for (std::size_t j = 0; j < dim; ++j) {
    if (j & m) continue;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & m) continue;
      Complex trace = 0.0;
      for (std::size_t s : sub) trace += rho(i | s, j | s);
      for (std::size_t s1 : sub) {
        for (std::size_t s2 : sub) rho(i | s1, j | s2) *= (1.0 - lambda);
      }
      for (std::size_t s : sub) rho(i | s, j | s) += 0.25 * lambda * trace;
    }
  }
}

// Elementwise factor of one coherent-noise tick on every qubit.
CMatrix coherent_factor(std::size_t wires, double lambda) {
  const std::size_t dim = std::size_t{1} << wires;
  CMatrix f(dim, dim);
  // R_Z = exp(-i pi Z / 8): phase exp(-i pi z / 8) with z = +-1.
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      Complex v = 1.0;
      for (std::size_t w = 0; w < wires; ++w) {
        const int zi = ((i >> w) & 1) ? -1 : 1;
        const int zj = ((j >> w) & 1) ? -1 : 1;
        v *= (1.0 - lambda) +
             lambda * std::polar(1.0, -std::numbers::pi / 8.0 * (zi - zj));
      }
      f(i, j) = v;
    }
  }
  return f;
}

}  // namespace

CircuitOutcome run_density(const Circuit& c, const NoiseModel& nm) {
  check_circuit(c);
  nm.validate();
  if (nm.leakage != 0.0) {
    throw Error(ErrorCode::kLeakageUnsupported,
                "leakage needs the trajectory backend");
  }
  const Register reg(c);
  const auto psi = reg.initial_state(c.initial);
  const Eigen::Index dim = static_cast<Eigen::Index>(reg.dim);
  Eigen::Map<const CVector> v(psi.data(), dim);
  CMatrix rho = v * v.adjoint();
  const CMatrix factor =
      nm.coherent > 0 ? coherent_factor(c.qubits + 1, nm.coherent) : CMatrix();
  DepthTracker depth(c.qubits + 1);
  for (const auto& g : c.gates) {
    const bool unitary =
        !std::holds_alternative<AncillaPrepare>(g) &&
        !std::holds_alternative<AncillaMeasureY>(g) &&
        !std::holds_alternative<PhysicalMeasureZ>(g);
    if (!unitary) continue;
    // rho <- U rho U^dagger via columns of rho and of its adjoint.
    for (Eigen::Index j = 0; j < dim; ++j) reg.apply(g, rho.col(j).data());
    rho.adjointInPlace();
    for (Eigen::Index j = 0; j < dim; ++j) reg.apply(g, rho.col(j).data());
    rho.adjointInPlace();
    const int ticks = depth.add_gate(g, c.qubits);
    if (nm.coherent > 0) {
      for (int k = 0; k < ticks; ++k) rho = rho.cwiseProduct(factor);
    }
    if (nm.incoherent > 0) {
      for (const auto& [a, b] : tqg_pairs(g, c.qubits)) {
        depolarize(rho, a, b, nm.incoherent);
      }
    }
  }
  const std::size_t half = reg.half;
  CircuitOutcome out;
  out.qubits = c.qubits;
  out.basis_sign = basis_sign_of(c);
  out.prob.resize(half);
  out.y.resize(half);
  out.coh.resize(half);
  for (std::size_t b = 0; b < half; ++b) {
    const auto i0 = static_cast<Eigen::Index>(b);
    const auto i1 = static_cast<Eigen::Index>(half + b);
    out.prob[b] = rho(i0, i0).real() + rho(i1, i1).real();
    out.coh[b] = rho(i1, i0);
    out.y[b] = 2.0 * out.coh[b].imag();
  }
  const auto h0 = static_cast<Eigen::Index>(c.initial.bits);
  out.overlap = 2.0 * rho(h0 + static_cast<Eigen::Index>(half), h0);
  return out;
}

// ---------------------------------------------------------------------------
// Leakage trajectories.

struct LeakageSimulator::Impl {
  Circuit circuit;
  NoiseModel noise;
  Register reg;
  int basis_sign = 1;
  std::vector<const Gate*> gates;       // unitary gates in order
  std::vector<int> cost;                // per unitary gate
  std::vector<std::uint64_t> wires;     // per unitary gate
  std::vector<double> p_leak;           // per unitary gate
  bool cached = false;                  // leakage-only: reuse noiseless prefix
  std::vector<std::vector<Complex>> before;  // state before gate k
  std::vector<Complex> final_state;

  Impl(const Circuit& c, const NoiseModel& nm)
      : circuit(c), noise(nm), reg(circuit) {
    basis_sign = basis_sign_of(circuit);
    const GateCostModel costs;
    for (const auto& g : circuit.gates) {
      if (std::holds_alternative<AncillaPrepare>(g) ||
          std::holds_alternative<AncillaMeasureY>(g) ||
          std::holds_alternative<PhysicalMeasureZ>(g)) {
        continue;
      }
      gates.push_back(&g);
      cost.push_back(gate_cost(g, costs));
      wires.push_back(gate_qubits(g, circuit.qubits));
      p_leak.push_back(1.0 - std::pow(1.0 - nm.leakage, cost.back()));
    }
    cached = nm.incoherent == 0.0 && nm.coherent == 0.0;
    if (cached) {
      auto a = reg.initial_state(circuit.initial);
      for (std::size_t k = 0; k < gates.size(); ++k) {
        if (p_leak[k] > 0.0) before.push_back(a);
        else before.emplace_back();
        reg.apply(*gates[k], a.data());
      }
      final_state = std::move(a);
    }
  }

  // Z-measures wire w, then resets it to |1>.
  void leak(std::vector<Complex>& a, int w, Rng& rng) const {
    const std::size_t m = std::size_t{1} << w;
    double p1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & m) p1 += std::norm(a[i]);
    }
    const bool one = rng.uniform() < p1;
    const double norm = std::sqrt(one ? p1 : 1.0 - p1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (static_cast<bool>(i & m) != one) continue;
      a[i] /= norm;
    }
    if (!one) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(i & m)) {
          a[i | m] = a[i];
          a[i] = 0.0;
        }
      }
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(i & m)) a[i] = 0.0;
      }
    }
  }

  void random_pauli(std::vector<Complex>& a, int w, int axis) const {
    const std::size_t m = std::size_t{1} << w;
    if (axis == 0) return;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (axis == 3) {
        if (i & m) a[i] = -a[i];
        continue;
      }
      if (i & m) continue;
      const Complex lo = a[i];
      const Complex hi = a[i | m];
      if (axis == 1) {
        a[i] = hi;
        a[i | m] = lo;
      } else {  // Y = [[0, -i], [i, 0]]
        a[i] = Complex(0, -1) * hi;
        a[i | m] = Complex(0, 1) * lo;
      }
    }
  }

  void rz_error(std::vector<Complex>& a, int w) const {
    const std::size_t m = std::size_t{1} << w;
    const Complex p0 = std::polar(1.0, -std::numbers::pi / 8.0);
    const Complex p1 = std::conj(p0);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (i & m) ? p1 : p0;
  }

  ShotRecord measure(const std::vector<Complex>& a, std::uint64_t leaked,
                     Rng& rng, const Complex& phase,
                     const CircuitMetadata& meta) const {
    const std::size_t half = reg.half;
    const std::uint64_t anc = std::uint64_t{1} << circuit.qubits;
    std::vector<double> w(2 * half);
    double total = 0.0;
    for (std::size_t b = 0; b < half; ++b) {
      if (leaked & anc) {
        // Leaked ancilla reads 1 regardless of its last state.
        w[2 * b] = 0.0;
        w[2 * b + 1] = std::norm(a[b]) + std::norm(a[half + b]);
      } else {
        // Amplitude on the +1 eigenvector of basis_sign * Y.
        const Complex ip = Complex(0.0, basis_sign) * phase;
        w[2 * b + 1] = 0.5 * std::norm(a[b] - ip * a[half + b]);
        w[2 * b] = 0.5 * std::norm(a[b] + ip * a[half + b]);
      }
      total += w[2 * b] + w[2 * b + 1];
    }
    const std::size_t k = sample_index(rng, w, total);
    std::uint64_t physical = k >> 1;
    physical |= leaked & (anc - 1);  // leaked qubits read 1
    return make_record(meta, basis_sign, static_cast<int>(k & 1), physical,
                       leaked);
  }

  // Picks the leaked operand uniformly among the gate's live operands.
  int leak_target(std::uint64_t ops, Rng& rng) const {
    std::vector<int> bits;
    for (std::uint64_t m = ops; m != 0; m &= m - 1) {
      bits.push_back(std::countr_zero(m));
    }
    return bits[rng.below(bits.size())];
  }

  // Runs gates k.. on state `a` with full noise.
  ShotRecord finish(std::vector<Complex> a, std::size_t k,
                    std::uint64_t leaked, Rng& rng, const Complex& phase,
                    const CircuitMetadata& meta) const {
    const std::size_t nwires = circuit.qubits + 1;
    const std::uint64_t anc = circuit.ancilla_bit();
    DepthTracker depth(nwires);
    for (; k < gates.size(); ++k) {
      const Gate& g = *gates[k];
      std::uint64_t ops = wires[k];
      double p = p_leak[k];
      const bool segment = std::holds_alternative<DiagonalSegment>(g) ||
                           std::holds_alternative<ControlledDiagonalSegment>(g);
      if (ops & leaked) {
        // Gates on a leaked qubit are dropped; segments only lose that qubit.
        if (!segment || (ops & leaked & anc)) continue;
        ops &= ~leaked;
        if (std::holds_alternative<ControlledDiagonalSegment>(g)) {
          p = 1.0 - std::pow(1.0 - noise.leakage, std::popcount(ops & ~anc));
        }
      }
      if (p > 0.0 && rng.uniform() < p) {
        const int w = leak_target(ops, rng);
        leak(a, w, rng);
        leaked |= std::uint64_t{1} << w;
        continue;
      }
      reg.apply(g, a.data(), leaked);
      const int ticks = depth.add_gate(g, circuit.qubits, leaked);
      if (noise.coherent > 0) {
        for (int t = 0; t < ticks; ++t) {
          for (std::size_t w = 0; w < nwires; ++w) {
            if (leaked & (std::uint64_t{1} << w)) continue;
            if (rng.bernoulli(noise.coherent)) rz_error(a, static_cast<int>(w));
          }
        }
      }
      if (noise.incoherent > 0) {
        for (const auto& [x, y] : tqg_pairs(g, circuit.qubits)) {
          if ((leaked >> x) & 1 || (leaked >> y) & 1) continue;
          if (!rng.bernoulli(noise.incoherent)) continue;
          const std::uint64_t r = rng.below(16);
          random_pauli(a, x, static_cast<int>(r & 3));
          random_pauli(a, y, static_cast<int>(r >> 2));
        }
      }
    }
    return measure(a, leaked, rng, phase, meta);
  }

  ShotRecord shot(Rng& rng, double final_phase,
                  const CircuitMetadata& meta) const {
    const Complex phase = std::polar(1.0, final_phase);
    if (!cached) {
      return finish(reg.initial_state(circuit.initial), 0, 0, rng, phase,
                    meta);
    }
    for (std::size_t k = 0; k < gates.size(); ++k) {
      if (p_leak[k] > 0.0 && rng.uniform() < p_leak[k]) {
        const int w = leak_target(wires[k], rng);
        auto a = before[k];
        leak(a, w, rng);
        return finish(std::move(a), k + 1, std::uint64_t{1} << w, rng, phase,
                      meta);
      }
    }
    return measure(final_state, 0, rng, phase, meta);
  }
};

LeakageSimulator::LeakageSimulator(const Circuit& c, const NoiseModel& nm) {
  check_circuit(c);
  nm.validate();
  impl_ = std::make_shared<const Impl>(c, nm);
}

ShotRecord LeakageSimulator::shot(Rng& rng) const {
  return impl_->shot(rng, 0.0, impl_->circuit.meta);
}

ShotRecord LeakageSimulator::shot(Rng& rng, double final_phase,
                                  const CircuitMetadata& meta) const {
  return impl_->shot(rng, final_phase, meta);
}

std::vector<ShotRecord> run_leakage(const Circuit& c, const NoiseModel& nm,
                                    std::size_t shots, Rng& rng) {
  LeakageSimulator sim(c, nm);
  std::vector<ShotRecord> out;
  out.reserve(shots);
  for (std::size_t i = 0; i < shots; ++i) out.push_back(sim.shot(rng));
  return out;
}

// ---------------------------------------------------------------------------
// Oracles.

GroundState exact_ground_state(const PauliHamiltonian& h) {
  require_dense(h.qubit_count());
  std::vector<std::uint64_t> all(std::size_t{1} << h.qubit_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return exact_ground_state(h, all);
}

GroundState exact_ground_state(const PauliHamiltonian& h,
                               const std::vector<std::uint64_t>& basis) {
  require_dense(h.qubit_count());
  if (basis.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty basis for diagonalization");
  }
  const CMatrix full = to_dense(h);
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      sub(i, j) = full(static_cast<Eigen::Index>(basis[i]),
                       static_cast<Eigen::Index>(basis[j]));
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sub);
  GroundState gs;
  gs.energy = es.eigenvalues()(0);
  gs.state = CVector::Zero(full.rows());
  CVector v = es.eigenvectors().col(0);
  // Fix the global phase: largest component real and positive.
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  v *= std::abs(v(arg)) / v(arg);
  for (Eigen::Index i = 0; i < n; ++i) {
    gs.state(static_cast<Eigen::Index>(basis[i])) = v(i);
  }
  return gs;
}

namespace {

using OdeState = std::vector<double>;

struct Schrodinger {
  Eigen::VectorXd hz;  // diagonal of H_Z, offset included
  CMatrix hi;
  SweepSchedule schedule;
  double T;
  Eigen::Index dim;
  Eigen::Index cols;

  void operator()(const OdeState& x, OdeState& dxdt, double t) const {
    Eigen::Map<const Eigen::MatrixXcd> psi(
        reinterpret_cast<const Complex*>(x.data()), dim, cols);
    Eigen::Map<Eigen::MatrixXcd> out(reinterpret_cast<Complex*>(dxdt.data()),
                                     dim, cols);
    const double w = schedule.w(t / T);
    // d psi / dt = i H(t / T) psi
    out.noalias() = hi * psi;
    out *= w;
    out += hz.asDiagonal() * psi;
    out *= Complex(0.0, 1.0);
  }
};

CMatrix propagate(const SplitHamiltonian& split, const SweepSchedule& schedule,
                  double T, const CMatrix& start, double tol) {
  require_dense(split.qubit_count());
  if (T == 0.0) return start;
  Schrodinger sys;
  sys.hz = to_dense(split.h_z).diagonal().real();
  sys.hi = to_dense(split.h_i);
  sys.schedule = schedule;
  sys.T = T;
  sys.dim = start.rows();
  sys.cols = start.cols();
  OdeState x(static_cast<std::size_t>(2 * start.size()));
  Eigen::Map<Eigen::MatrixXcd>(reinterpret_cast<Complex*>(x.data()), sys.dim,
                               sys.cols) = start;
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled(
      tol, tol, odeint::runge_kutta_dopri5<OdeState>());
  odeint::integrate_adaptive(stepper, sys, x, 0.0, T, T / 1000.0);
  return Eigen::Map<const Eigen::MatrixXcd>(
      reinterpret_cast<const Complex*>(x.data()), sys.dim, sys.cols);
}

}  // namespace

CVector exact_adiabatic(const SplitHamiltonian& split,
                        const SweepSchedule& schedule, double T,
                        const BasisState& initial, double tol) {
  if (initial.n != split.qubit_count()) {
    throw Error(ErrorCode::kMismatchedQubitCount,
                "initial state does not match the Hamiltonian");
  }
  require_dense(split.qubit_count());
  const CMatrix start = basis_vector(initial.n, initial.bits);
  return propagate(split, schedule, T, start, tol).col(0);
}

CMatrix exact_adiabatic_unitary(const SplitHamiltonian& split,
                                const SweepSchedule& schedule, double T,
                                double tol) {
  require_dense(split.qubit_count());
  const auto dim = Eigen::Index{1} << split.qubit_count();
  return propagate(split, schedule, T, CMatrix::Identity(dim, dim), tol);
}

double fidelity(const CVector& a, const CVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace aqpe
