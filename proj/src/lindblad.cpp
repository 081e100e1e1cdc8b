// Copyright 2026 The liouvep authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "liouvep/lindblad.hpp"

#include <string>
#include <utility>

namespace liouvep {

JumpFamily JumpFamily::dephasing(int n_sites) {
  JumpFamily f;
  f.kind = JumpKind::Dephasing;
  f.ops.reserve(n_sites);
  for (int k = 0; k < n_sites; ++k) f.ops.push_back(site_operator(n_sites, k, pauli_z()));
  return f;
}

JumpFamily JumpFamily::relaxation(int n_sites) {
  JumpFamily f;
  f.kind = JumpKind::Relaxation;
  f.ops.reserve(n_sites);
  for (int k = 0; k < n_sites; ++k) f.ops.push_back(site_operator(n_sites, k, sigma_minus()));
  return f;
}

JumpFamily JumpFamily::custom(std::vector<CMatrix> ops) {
  if (ops.empty()) throw DimMismatch("custom jump family must not be empty");
  const Index d = ops.front().rows();
  for (const auto& op : ops) {
    if (op.rows() != d || op.cols() != d) {
      throw DimMismatch("custom jump operators must all be square with equal dimension");
    }
  }
  JumpFamily f;
  f.kind = JumpKind::Custom;
  f.ops = std::move(ops);
  return f;
}

LindbladModel make_model(CMatrix hamiltonian, JumpFamily jumps, CorrelationModel correlation,
                         double herm_tol) {
  QOperator h = QOperator::hermitian(std::move(hamiltonian), herm_tol);
  if (jumps.n() == 0) throw DimMismatch("model needs at least one jump operator");
  if (jumps.dim() != h.dim()) {
    throw DimMismatch("jump dimension " + std::to_string(jumps.dim()) +
                      " does not match Hamiltonian dimension " + std::to_string(h.dim()));
  }
  if (jumps.n() != correlation.graph.n()) {
    throw DimMismatch("jump count " + std::to_string(jumps.n()) + " does not match graph size " +
                      std::to_string(correlation.graph.n()));
  }
  sector_rates(correlation);  // PositivityViolated on bad c
  return LindbladModel{std::move(h.entries), std::move(jumps), std::move(correlation)};
}

std::vector<CollectiveChannel> collective_jumps(const LindbladModel& m) {
  std::vector<CollectiveChannel> channels;
  const int n = m.jumps.n();
  if (m.correlation.c == 0.0) {
    // Uncorrelated: the site basis already decouples.
    channels.reserve(n);
    for (int j = 0; j < n; ++j) channels.push_back({m.correlation.gamma0, m.jumps.ops[j]});
    return channels;
  }
  const RVector rates = sector_rates(m.correlation);
  const RMatrix& u = m.correlation.graph.eigvecs;
  const Index d = m.dim();
  channels.reserve(n);
  for (int k = 0; k < n; ++k) {
    CMatrix op = CMatrix::Zero(d, d);
    for (int j = 0; j < n; ++j) op += u(j, k) * m.jumps.ops[j];
    channels.push_back({rates(k), std::move(op)});
  }
  return channels;
}

Superoperator hamiltonian_superop(const CMatrix& h, double herm_tol) {
  QOperator hop = QOperator::hermitian(h, herm_tol);
  const Index d = hop.dim();
  const CMatrix eye = CMatrix::Identity(d, d);
  const Complex mi(0.0, -1.0);
  return Superoperator(mi * (kron(eye, hop.entries) - kron(hop.entries.transpose(), eye)));
}

Superoperator dissipator_superop(double rate, const CMatrix& l) {
  if (l.rows() != l.cols()) throw DimMismatch("jump operator must be square");
  const Index d = l.rows();
  const CMatrix eye = CMatrix::Identity(d, d);
  const CMatrix ldl = l.adjoint() * l;
  CMatrix out = kron(l.conjugate(), l);
  out -= 0.5 * kron(eye, ldl);
  out -= 0.5 * kron(ldl.transpose(), eye);
  return Superoperator(rate * out);
}

Superoperator assemble_liouvillian(const LindbladModel& m) {
  CMatrix total = hamiltonian_superop(m.hamiltonian).entries;
  for (const auto& ch : collective_jumps(m)) {
    total += dissipator_superop(ch.rate, ch.op).entries;
  }
  return Superoperator(std::move(total));
}

Superoperator assemble_pairwise(const LindbladModel& m) {
  sector_rates(m.correlation);  // validate positivity up front
  const int n = m.jumps.n();
  const Index d = m.dim();
  const CMatrix eye = CMatrix::Identity(d, d);
  const RMatrix pair_rates = m.correlation.gamma0 *
                             (RMatrix::Identity(n, n) + m.correlation.c * m.correlation.graph.adjacency);

  CMatrix total = hamiltonian_superop(m.hamiltonian).entries;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = pair_rates(i, j);
      if (w == 0.0) continue;
      // w * (L_i rho L_j^dag - 1/2 {L_j^dag L_i, rho})
      const CMatrix cross = m.jumps.ops[j].adjoint() * m.jumps.ops[i];
      total += w * (kron(m.jumps.ops[j].conjugate(), m.jumps.ops[i]) -
                    0.5 * kron(eye, cross) - 0.5 * kron(cross.transpose(), eye));
    }
  }
  return Superoperator(std::move(total));
}

Superoperator adjoint_liouvillian(const LindbladModel& m) {
  const Index d = m.dim();
  const CMatrix eye = CMatrix::Identity(d, d);
  const Complex pi_(0.0, 1.0);
  CMatrix total = pi_ * (kron(eye, m.hamiltonian) - kron(m.hamiltonian.transpose(), eye));
  for (const auto& ch : collective_jumps(m)) {
    const CMatrix ldl = ch.op.adjoint() * ch.op;
    CMatrix diss = kron(ch.op.transpose(), ch.op.adjoint());
    diss -= 0.5 * kron(eye, ldl);
    diss -= 0.5 * kron(ldl.transpose(), eye);
    total += ch.rate * diss;
  }
  return Superoperator(std::move(total));
}

}  // namespace liouvep
