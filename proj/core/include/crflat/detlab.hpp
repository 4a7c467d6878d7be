#pragma once

#include <string>

#include "crflat/matrix.hpp"
#include "crflat/unipoly.hpp"

namespace crflat {

/// Structured binomial matrix families over Q[xi]. D and S are constant;
/// sizes are mhat x mhat for D and S, (2 mhat - 1)^2 for Rplus/Rminus/N and
/// (2 mhat - 2)^2 for T.
enum class MatKind { D, S, Rplus, Rminus, N, T };

MatKind mat_kind_from_string(const std::string& s);
std::string to_string(MatKind k);

struct StructuredMatrix {
    MatKind kind;
    int mhat;
    Mat<UniPoly> entries;
};

StructuredMatrix build_matrix(MatKind kind, int mhat);

UniPoly det_structured(MatKind kind, int mhat);

struct ClosedFormReport {
    Rat c1;                 // leading constant after dividing out the forced factors
    int xi_exponent = 0;    // (mhat-1)^2
    int unit_exponent = 0;  // 3*mhat - 2, factor (1 -+ xi)
    bool ok = false;        // division exact and c1 nonzero
};

/// Exact division of det R(+/-) by xi^((mhat-1)^2) (1 -+ xi)^(3 mhat - 2).
ClosedFormReport verify_closed_form_R(MatKind kind, int mhat);

/// det at a nonzero rational xi0 is nonzero (N and T families).
bool verify_nonsingular(MatKind kind, int mhat, const Rat& xi0);

/// Residual of the telescoping binomial identity
///   a^(3 mhat - 2) - a - sum_{k=1..k0} (a-1)^k a^k (C(3mh-3-k, k-1) + C(3mh-3-k, k) a)
///   = (a-1)^(k0+1) a^(k0+1) sum_{t=k0..3mh-4-k0} C(t, k0) a^(3mh-4-k0-t),
/// as a polynomial in a; identically zero for 0 <= k0 <= floor(3 mhat / 2).
UniPoly alpha_identity(int mhat, int k0);

std::string det_report_json(MatKind kind, int mhat);

}  // namespace crflat
