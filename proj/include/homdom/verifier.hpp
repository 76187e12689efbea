#pragma once

#include "homdom/constructions.hpp"
#include "homdom/graph.hpp"
#include "homdom/hom.hpp"
#include "homdom/io.hpp"
#include "homdom/rational.hpp"
#include "homdom/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace homdom {

/// G(n, p) with p = num/den, edges decided in (u, v) lexicographic order.
Graph gnp(int n, const Rat& p, Rng& rng);

struct GnpSpec {
    int count = 0;
    int min_n = 1;
    int max_n = 10;
    Rat p = Rat(1, 2);
    std::uint64_t seed = 1;
};

struct CorpusSpec {
    /// Exhaustive part: every graph on 1..exhaustive_max_n vertices. 0 disables it.
    int exhaustive_max_n = 0;
    bool dedup = true;
    std::vector<GnpSpec> gnp;
    /// red_line_graph(p=5, k=2), behrend_graph(30), simple families at n in {4, 6, 8}.
    bool constructions = false;
    std::uint64_t construction_seed = 1;

    /// Throws InvalidArgument / ResourceLimit on bad or over-cap values.
    void validate() const;
};

CorpusSpec corpus_spec_from_json(const json& j);
json corpus_spec_to_json(const CorpusSpec& spec);

struct CorpusTarget {
    std::string tag;
    FamilyInstance target;
};

/// Listed targets plus an optional exhaustive part that is streamed, not stored.
struct Corpus {
    int exhaustive_max_n = 0;
    bool dedup = true;
    std::vector<CorpusTarget> targets;

    /// Visits the exhaustive part (tags "exhaustive-n:i") then the listed targets.
    void for_each(const std::function<void(const CorpusTarget&)>& visit) const;
    /// Materialized size; the exhaustive part is counted by enumeration.
    std::size_t size() const;
};

/// Caps: dedup n <= 6 or labeled n <= 7 for the exhaustive part.
Corpus build_corpus(const CorpusSpec& spec);

enum class Verdict { holds, violated, skipped };
std::string to_string(Verdict verdict);

struct TargetVerdict {
    std::string tag;
    Verdict verdict = Verdict::holds;
    int slack_sign = 0;              // sign of lhs - rhs after clearing exponents
    std::optional<double> log_slack; // log t(G,T) - c log t(H,T) when both are positive
    std::string witness;             // graph6 of simple-graph targets
    std::string note;                // reason for a skip
};

struct VerificationReport {
    std::string description;
    std::string g6_g, g6_h;
    Rat exponent;
    std::size_t checked = 0;
    std::size_t holds = 0;
    std::vector<TargetVerdict> verdicts; // up to max_recorded entries, corpus order
    bool verdicts_truncated = false;
    std::vector<TargetVerdict> violations;
    std::vector<TargetVerdict> skipped;
    std::optional<TargetVerdict> min_slack;

    bool ok() const { return violations.empty() && skipped.empty(); }
    /// 0 no violations, 1 violation found, 4 skips present (and no violation).
    int exit_code() const;
};

json report_to_json(const VerificationReport& report);

struct CheckOptions {
    HomLimits limits{50'000'000ULL, 5'000'000ULL};
    std::size_t max_recorded = 5000;
};

/// t(G,T)^q >= t(H,T)^p for every target, c = p/q in lowest terms.
VerificationReport check_inequality(const Graph& g, const Graph& h, const Rat& c, const Corpus& corpus,
                                    const CheckOptions& options = {});

/// General integer-exponent product inequality prod_i t(A_i,T)^{a_i} >= prod_j t(B_j,T)^{b_j}.
struct Monomial {
    Graph graph;
    unsigned long power = 1;
};
VerificationReport check_product_inequality(const std::vector<Monomial>& lhs, const std::vector<Monomial>& rhs,
                                            const std::string& description, const Corpus& corpus,
                                            const CheckOptions& options = {});

struct TensorReport {
    std::vector<double> normalized_slack; // r = 1..rmax
    std::vector<int> slack_sign;          // exact, r = 1..rmax
    std::optional<bool> square_identity;  // t(G, T x T) = t(G,T)^2 (and same for H), when materialized
};

/// Requires 0 < t(H,T) and t(G,T) > 0. The square identity is evaluated when
/// v(T) <= max_square_vertices.
TensorReport tensor_amplify(const Graph& g, const Graph& h, const Rat& c, const Graph& t, int rmax,
                            int max_square_vertices = 8);

/// t(C_2j)^2 t(C_{2i+1})^{2i-1-2j} >= t(C_{2i-1})^{2i+1-2j}, i > j >= 1, in t-form; the
/// hom-form verdict is computed too and must agree per target (std::logic_error otherwise).
VerificationReport search_problem6(int i, int j, const Corpus& corpus, const CheckOptions& options = {});

struct EqMainReport {
    BigInt chorded;        // hom(C_{2k+1}^+, T), the cycle with chord
    BigInt ordered_sum;    // sum over ordered adjacent pairs (u, v)
    BigInt unordered_sum;  // sum over edges {u, v} taken once
    BigInt cycle;          // hom(C_{2k+1}, T)
    bool equal() const { return chorded == ordered_sum; }
    bool pruning() const { return cycle >= chorded; }
};

EqMainReport eq_main_report(int k, int l, const Graph& t);
/// The rooted-product identity for cycle_with_chord(k, l), ordered-pair form.
bool check_eq_main(int k, int l, const Graph& t);

} // namespace homdom
