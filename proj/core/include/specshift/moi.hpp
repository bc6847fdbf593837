#pragma once

#include <functional>
#include <vector>

#include "specshift/hermitian.hpp"
#include "specshift/scalar_function.hpp"
#include "specshift/types.hpp"

namespace specshift {

// Enumerates the spectral tuples of the sandwich P^0 T_1 P^1 ... T_n P^n,
// depth-first with shared partial products. a_list.size() == t_list.size()+1;
// visit receives the eigenvalue tuple and the finished sandwich.
void for_each_spectral_tuple(
    const std::vector<const HermitianOperator*>& a_list, const std::vector<Matrix>& t_list,
    const std::function<void(const std::vector<double>&, const Matrix&)>& visit);

// The multiple-operator integral J(Dif_n f, A_list, T_list): divided
// differences of f across the spectra of the n+1 pivot operators, weighting
// each spectral sandwich. This is the n-linear building block everything
// else reduces to.
Matrix moi_apply(const ScalarFunctionFamily& f, const std::vector<HermitianOperator>& a_list,
                 const std::vector<Matrix>& t_list);

// Same with one pivot repeated n+1 times.
Matrix moi_apply(const ScalarFunctionFamily& f, const HermitianOperator& a,
                 const std::vector<Matrix>& t_list);

// k-th term of the operator Taylor expansion of f(A + B) around A:
// J(Dif_k f, A, B,...,B). Order zero is f(A).
Matrix taylor_term(const ScalarFunctionFamily& f, int k, const HermitianOperator& a,
                   const Matrix& b);

// Remainder after n terms, exact single-integral form:
// R_n = J(Dif_n f, (A+B, A, ..., A), B,...,B).
Matrix taylor_remainder_direct(const ScalarFunctionFamily& f, int n, const HermitianOperator& a,
                               const Matrix& b);

// Remainder after n terms, Cauchy form:
// R_n = n Int_0^1 (1-t)^(n-1) J(Dif_n f, A + tB, B,...,B) dt,
// evaluated with a Gauss-Jacobi rule carrying the (1-t)^(n-1) weight.
Matrix taylor_remainder_integral(const ScalarFunctionFamily& f, int n, const HermitianOperator& a,
                                 const Matrix& b, int quad_order = 24);

struct TraceCyclePair {
  cplx direct;  // Tr J(Dif_n f, A, B,...,B)
  cplx cycled;  // (1/n) Tr(B J(Dif_(n-1) f', A, B,...,B))
  double defect() const;
};

// Trace cyclicity of the repeated-pivot integral against one derivative drop.
TraceCyclePair trace_cycle_check(const ScalarFunctionFamily& f, int n, const HermitianOperator& a,
                                 const Matrix& b);

}  // namespace specshift
