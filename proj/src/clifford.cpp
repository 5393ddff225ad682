// Copyright 2026 The qcoh authors.
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

#include "qcoh/clifford.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcoh {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct GroupTables {
  std::array<CliffordElement, 24> elements;
  std::array<std::array<int, 24>, 24> cayley;
  std::array<int, 24> inverse;
};

GroupTables build_tables() {
  GroupTables t;
  int k = 0;
  for (int s = 0; s < 3; ++s)
    for (int p = 0; p < 2; ++p)
      for (int z = 0; z < 4; ++z) {
        CliffordElement e;
        e.index = k;
        e.s = static_cast<SGate>(s);
        e.p = static_cast<PGate>(p);
        e.z = static_cast<ZGate>(z);
        e.ptm = compose(primitive_ptm(e.z), compose(primitive_ptm(e.p), primitive_ptm(e.s)));
        t.elements[k++] = e;
      }

  auto match = [&](const Mat4& m) {
    for (int i = 0; i < 24; ++i)
      if ((t.elements[i].ptm.m - m).cwiseAbs().maxCoeff() < 1e-9) return i;
    throw std::runtime_error("clifford: product left the group (broken table)");
  };
  for (int a = 0; a < 24; ++a)
    for (int b = 0; b < 24; ++b)
      t.cayley[a][b] = match(t.elements[a].ptm.m * t.elements[b].ptm.m);
  for (int a = 0; a < 24; ++a)
    // orthogonal PTM: inverse is the transpose
    t.inverse[a] = match(t.elements[a].ptm.m.transpose());
  return t;
}

const GroupTables& tables() {
  static const GroupTables t = build_tables();
  return t;
}

}  // namespace

PauliTransferMatrix primitive_ptm(SGate g) {
  switch (g) {
    case SGate::I: return PauliTransferMatrix::identity();
    case SGate::X90: return unitary_rotation(Vec3::UnitX(), kHalfPi);
    case SGate::Y90: return unitary_rotation(Vec3::UnitY(), kHalfPi);
  }
  throw std::invalid_argument("bad SGate");
}

PauliTransferMatrix primitive_ptm(PGate g) {
  switch (g) {
    case PGate::I: return PauliTransferMatrix::identity();
    case PGate::Y180: return unitary_rotation(Vec3::UnitY(), 2 * kHalfPi);
  }
  throw std::invalid_argument("bad PGate");
}

PauliTransferMatrix primitive_ptm(ZGate g) {
  switch (g) {
    case ZGate::I: return PauliTransferMatrix::identity();
    case ZGate::Z90: return unitary_rotation(Vec3::UnitZ(), kHalfPi);
    case ZGate::Z180: return unitary_rotation(Vec3::UnitZ(), 2 * kHalfPi);
    case ZGate::Z270: return unitary_rotation(Vec3::UnitZ(), 3 * kHalfPi);
  }
  throw std::invalid_argument("bad ZGate");
}

const std::array<CliffordElement, 24>& clifford_group() { return tables().elements; }

int clifford_index_of(const PauliTransferMatrix& m, double tol) {
  for (const auto& e : tables().elements)
    if (e.ptm.approx_equal(m, tol)) return e.index;
  throw std::runtime_error("clifford_index_of: no matching group element");
}

int cayley(int a, int b) {
  if (a < 0 || a >= 24 || b < 0 || b >= 24)
    throw std::invalid_argument("cayley: index out of range");
  return tables().cayley[a][b];
}

int clifford_inverse(int a) {
  if (a < 0 || a >= 24) throw std::invalid_argument("clifford_inverse: index out of range");
  return tables().inverse[a];
}

RecoveryGate recovery_gate(std::span<const int> seq) {
  int composite = 0;  // identity
  for (int idx : seq) composite = cayley(idx, composite);
  return RecoveryGate{clifford_inverse(composite), +1};
}

}  // namespace qcoh
