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

#ifndef QCOH_CLIFFORD_HPP
#define QCOH_CLIFFORD_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qcoh/ptm.hpp"

namespace qcoh {

enum class SGate : uint8_t { I = 0, X90 = 1, Y90 = 2 };
enum class PGate : uint8_t { I = 0, Y180 = 1 };
enum class ZGate : uint8_t { I = 0, Z90 = 1, Z180 = 2, Z270 = 3 };

/// One of the 24 single-qubit Cliffords, decomposed as G = S.P.Z: S applied
/// first in time, then P, then the virtual Z, so the state-action matrix is
/// ptm(Z) * ptm(P) * ptm(S). Indexed lexicographically in (s, p, z); index 0
/// is the identity.
struct CliffordElement {
  int index = 0;
  SGate s = SGate::I;
  PGate p = PGate::I;
  ZGate z = ZGate::I;
  PauliTransferMatrix ptm;
};

PauliTransferMatrix primitive_ptm(SGate g);
PauliTransferMatrix primitive_ptm(PGate g);
PauliTransferMatrix primitive_ptm(ZGate g);

/// The 24-element group in canonical order. Built once, immutable, thread-safe.
const std::array<CliffordElement, 24>& clifford_group();

/// Index of the element whose PTM matches m within tol; throws if none does.
int clifford_index_of(const PauliTransferMatrix& m, double tol = 1e-9);

/// Group product: index of ptm(a) * ptm(b), i.e. b applied first.
int cayley(int a, int b);

int clifford_inverse(int a);

struct RecoveryGate {
  int index = 0;
  int sign = +1;  // sign of the sigma_z the recovery maps onto
};

/// Recovery gate for a sequence applied in time order seq[0], seq[1], ...:
/// the group inverse R of the composite, so that R after the sequence is the
/// identity (and maps sigma_z to +sigma_z; the sign slot is kept for
/// alternative recovery conventions).
RecoveryGate recovery_gate(std::span<const int> seq);

}  // namespace qcoh

#endif
