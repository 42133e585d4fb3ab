#pragma once

#include <optional>
#include <vector>

#include "liemin/groebner.hpp"
#include "liemin/ivp.hpp"
#include "liemin/linalg.hpp"
#include "liemin/lie.hpp"
#include "liemin/poly_template.hpp"

namespace liemin {

struct IterationCapExceeded : std::runtime_error {
    explicit IterationCapExceeded(std::size_t cap)
        : std::runtime_error("iteration safety cap (" + std::to_string(cap) + ") exceeded") {}
};

// Smallest invariant ideal containing a single polynomial, or a refutation
// witness p^(j)(v0) != 0.
struct NaiveResult {
    bool valid = false;
    // Valid payload
    std::size_t m = 0;
    std::vector<Poly> basis;  // p^(0) .. p^(m)
    GroebnerBasis groebner;
    Poly next;                       // p^(m+1), member of the ideal
    std::vector<Poly> next_quotients;  // membership certificate for next
    // Refuted payload
    std::size_t refuted_j = 0;
    Rat witness;
};

NaiveResult naive_invariant(const Poly& p, const IVP& ivp, std::size_t cap = 500);

struct DoubleChainOptions {
    std::size_t cap = 500;
    bool use_pseudoideal = false;
    // Multiplier degree bound; negative means deg(pi) + max_i deg(f_i).
    long pseudoideal_degree = -1;
    BuchbergerOptions groebner;
};

struct InvariantResult {
    std::size_t m = 0;
    RatRows V_basis;                 // basis B_m of V_m in parameter space
    std::vector<Poly> J_generators;  // union_j pi^(j)[B_m], deduplicated
    GroebnerBasis J_groebner;
    PolyTemplate result_template;    // fresh parameters, ranges over pi[V_m]
};

InvariantResult double_chain(const PolyTemplate& pi, const IVP& ivp,
                             const DoubleChainOptions& opts = {});

// Linear drift fast path: stops at the first V_(m+1) = V_m without any
// Gröbner-based stabilization test; the J basis is still emitted.
InvariantResult double_chain_linear(const PolyTemplate& pi, const IVP& ivp,
                                    const DoubleChainOptions& opts = {});

// Row t with pi[v](v0) = t . v for all v.
RatVec constraint_row(const PolyTemplate& pi, const std::vector<Rat>& v0);

// Fresh template pi' with pi'[R^k] = pi[span(V_basis)] and pi'[e_i] = pi[b_i].
PolyTemplate result_template(const PolyTemplate& pi, const RatRows& V_basis);

struct CertResult {
    enum class Verdict { Certified, NonzeroAtInit, NotClosed };
    Verdict verdict = Verdict::Certified;
    std::size_t failed_index = 0;
    Rat failed_value;  // NonzeroAtInit witness
    // Certified: per-generator quotients expressing L(g_i) over the basis.
    std::vector<std::vector<Poly>> lie_quotients;
    GroebnerBasis groebner;

    bool certified() const { return verdict == Verdict::Certified; }
};

// Def.-3 certificate: every s vanishes at v0 and L(s) lies in <S>.
CertResult certify_invariant(const std::vector<Poly>& S, const IVP& ivp,
                             const BuchbergerOptions& opts = {});

// p(x(t)) == q(x(t)), decided through the naive invariant of p - q.
bool check_equivalence(const Poly& p, const Poly& q, const IVP& ivp, std::size_t cap = 500);

// Membership in the degree-k pseudoideal: p = sum h_i S_i with deg(h_i) <= k,
// decided by an exact linear solve. Sound but incomplete for <S>.
bool pseudoideal_member(const Poly& p, const std::vector<Poly>& S, std::size_t k);

}  // namespace liemin
