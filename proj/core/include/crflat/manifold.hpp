#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crflat/jet.hpp"
#include "crflat/rational.hpp"

namespace crflat {

enum class BishopClass { Elliptic, Parabolic, Hyperbolic };

std::string to_string(BishopClass c);

/// Truncated model of a codimension-two submanifold near a non-degenerate
/// CR-singular point:
///     w = q + p + iE,
///     q = sum_i (|z_i|^2 + lambda_i (z_i^2 + zbar_i^2)),
/// with p, E real of order >= 3 and lambda the vector of Bishop invariants.
/// q is implied by lambda and never stored.
struct ManifoldJet {
    int n = 2;
    int order = 0;
    std::vector<Rat> lambda;
    Jet p, E;

    ManifoldJet() = default;
    ManifoldJet(int n_, int order_, std::vector<Rat> lambda_, Jet p_, Jet E_);

    /// The quadric q as a jet of the manifold's order.
    Jet q_jet() const;
    /// G = q + p.
    Jet G_jet() const;
    /// w_i = z_i + 2 lambda_i zbar_i (1-based).
    Jet w_jet(int i) const;
};

struct ValidationReport {
    bool ok = true;
    std::string message;                  // empty when ok
    std::optional<MultiIndex> witness;    // first offending monomial, when applicable
};

/// Checks the type invariants (reality, orders, index shapes); never throws
/// on bad data, reports the first violation instead.
ValidationReport validate(const ManifoldJet& m);

std::vector<std::pair<Rat, BishopClass>> classify(const ManifoldJet& m);
BishopClass classify_lambda(const Rat& lambda);

/// Permutes the z variables so position n holds the smallest lambda_i != 1/2
/// (ties broken by the lowest original index); the permutation is the
/// transposition of that index with n. Returns nullopt when every invariant
/// is parabolic. perm[i] is the 1-based original index of the variable now in
/// position i+1.
std::optional<std::pair<ManifoldJet, std::vector<int>>>
reindex_smallest_nonparabolic(const ManifoldJet& m);

ManifoldJet apply_permutation(const ManifoldJet& m, const std::vector<int>& perm);

/// G + iE.
Jet defining_series(const ManifoldJet& m);

struct FlatAlready {};
struct LeadingPart {
    int m;   // order of E
    Jet H;   // homogeneous part of E of degree m
};
std::variant<FlatAlready, LeadingPart> order_of_E(const ManifoldJet& m);

/// Built-in example manifolds. Parameters are passed as a string map; values
/// are rationals "p/q" or complex "p/q,p/q".
///   cubic_nonminimal:   lambda1, lambda2, mu1, mu2, order
///   hy2_obstruction:    b<j><l> entries (e.g. b22=1), order
///   appendix_random:    seed, m, lambda1, lambdan, order
ManifoldJet fixture(const std::string& name, const std::map<std::string, std::string>& params = {});

/// Manifest JSON: {"n":int, "order":int, "lambda":["p/q",...],
/// "p":[term...], "E":[term...]} with term
/// {"alpha":[...], "beta":[...], "re":"p/q", "im":"p/q"}.
/// The loader rejects manifests that fail validate().
ManifoldJet manifest_load(const std::string& json_text);
std::string manifest_save(const ManifoldJet& m);

CNum parse_cnum(const std::string& s);

}  // namespace crflat
