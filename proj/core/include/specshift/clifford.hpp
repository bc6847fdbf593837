#pragma once

#include <vector>

#include "specshift/types.hpp"

namespace specshift {

// Anti-Hermitian generators c_1..c_d of the complex Clifford algebra with
// c_i c_j + c_j c_i = -2 delta_ij, in the minimal rank r = 2^((d-1)/2).
// Orientation: tr(c_(g1)..c_(gd)) = (2i)^((d-1)/2) (-i)^d eps_g for every
// permutation word g, anchored at c_j = -i sigma_j for d = 3.
struct CliffordRep {
  int d = 0;
  int r = 0;
  std::vector<Matrix> c;
};

CliffordRep build_clifford(int d);

// Trace of c_(w1) c_(w2) ... for 1-based indices w.
cplx clifford_word_trace(const CliffordRep& rep, const std::vector<int>& word);

// c_R = sum_i dir_i c_i for a unit direction; P_pm project onto its (+-i)
// eigenspaces: P_pm = (Id -+ i c_R)/2.
struct RadialSplit {
  Matrix c_R;
  Matrix P_plus;
  Matrix P_minus;
};

RadialSplit radial_split(const CliffordRep& rep, const RealVector& direction);

// The theoretical trace constant (2i)^((d-1)/2) (-i)^d (identity permutation).
cplx clifford_trace_constant(int d);

}  // namespace specshift
