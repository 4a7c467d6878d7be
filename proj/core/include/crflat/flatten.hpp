#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crflat/holo_correction.hpp"
#include "crflat/manifold.hpp"
#include "crflat/matrix.hpp"

namespace crflat {

/// One normalized coefficient of E at weighted order m0: either the full
/// complex coefficient vanishes or only its real part does. A Full condition
/// on a diagonal index (beta = alpha) pins one real number, otherwise two.
struct NormalConstraint {
    enum class Kind { Full, RealPart };
    MultiIndex index;
    Kind kind = Kind::Full;

    int real_count() const {
        if (kind == Kind::RealPart) return 1;
        return index.alpha == index.beta ? 1 : 2;
    }
};

/// The target shape of E^(m0) after the weighted-homogeneous holomorphic
/// correction of order m0. The case tag is LambdaZero when lambda_n = 0,
/// otherwise m0 mod 6 dispatched to delta in {-3..2} with m0 = 6*mhat + delta.
struct NormalFormSpec {
    int n = 2;
    int m0 = 0;
    bool lambda_n_zero = false;
    int delta = 0;  // meaningful when lambda_n != 0
    int mhat = 0;   // ditto
    std::vector<NormalConstraint> constraints;

    int real_constraint_count() const {
        int c = 0;
        for (const auto& k : constraints) c += k.real_count();
        return c;
    }
};

NormalFormSpec normal_target(int n, int m0, const Rat& lambda_n);

/// Real dimension of the correction space at weighted order m0:
/// 2 * #{(I,j) : |I| + 2j = m0} minus one when m0 is even.
int correction_space_dim(int n, int m0);

/// Real coordinates of the correction space in a fixed deterministic order.
struct CorrectionBasisElem {
    std::vector<int> I;
    int j = 0;
    bool imaginary_part = false;  // coordinate multiplies i when true
};
std::vector<CorrectionBasisElem> correction_basis(int n, int m0);

/// The real linear map from correction coordinates to the constrained
/// coefficients of Im B(z, q) at degree m0; square and injective.
struct NormalizationSystem {
    NormalFormSpec spec;
    std::vector<CorrectionBasisElem> basis;
    Mat<Rat> map;  // rows: constraint coordinates, cols: basis coordinates
};
NormalizationSystem normalization_map(const ManifoldJet& m, int m0);

/// Transform w -> w + B applied with the full defining series.
ManifoldJet apply_correction(const ManifoldJet& m, const HoloCorrection& b);

/// Unique correction making E^(m0) satisfy the normal form; degrees below m0
/// are untouched.
std::pair<ManifoldJet, HoloCorrection> normalize_order(const ManifoldJet& m, int m0);

struct FlattenReport {
    enum class Outcome { Flattened, Obstructed, NotApplicable };
    Outcome outcome = Outcome::NotApplicable;
    int reached_order = 0;             // N on success, the failing m0 otherwise
    std::vector<HoloCorrection> corrections;
    std::optional<Jet> obstruction;    // surviving normalized leading part
};

/// Loop m0 = 3..N: normalize, then require E^(m0) = 0; stops with the
/// normalized nonzero part as a certificate otherwise. NotApplicable when
/// every Bishop invariant equals 1/2.
FlattenReport flatten_to_order(const ManifoldJet& m, int N);

std::string flatten_report_json(const FlattenReport& rep, const std::vector<int>& perm = {});

struct RigidityResult {
    bool applicable = true;
    int dimension = 0;
    std::vector<Jet> basis;  // real homogeneous degree-m kernel elements
};

/// Exact kernel of {normal-form constraints at m0 = m} + {reduced
/// non-minimality system} acting on real homogeneous H of degree m.
/// Requires lambda_n != 1/2 (reindex first); returns applicable = false when
/// every invariant is parabolic.
RigidityResult rigidity_kernel(int n, const std::vector<Rat>& lambda, int m);

std::string rigidity_report_json(int n, const std::vector<Rat>& lambda, int m,
                                 const RigidityResult& r, const std::vector<int>& perm = {});

}  // namespace crflat
