#include "homdom/verifier.hpp"

#include "homdom/error.hpp"

#include <cmath>
#include <stdexcept>

namespace homdom {

Graph gnp(int n, const Rat& p, Rng& rng)
{
    if (n < 1) {
        throw InvalidArgument("gnp needs n >= 1");
    }
    if (p < 0 || p > 1) {
        throw InvalidArgument("gnp needs 0 <= p <= 1");
    }
    if (!p.get_den().fits_ulong_p()) {
        throw InvalidArgument("gnp: probability denominator too large");
    }
    const std::uint64_t num = p.get_num().get_ui();
    const std::uint64_t den = p.get_den().get_ui();
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.bernoulli(num, den)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph(n, std::move(edges));
}

void CorpusSpec::validate() const
{
    if (exhaustive_max_n < 0) {
        throw InvalidArgument("exhaustive_max_n must be >= 0");
    }
    if (dedup && exhaustive_max_n > 6) {
        throw ResourceLimit("exhaustive corpus with dedup is capped at n <= 6");
    }
    if (!dedup && exhaustive_max_n > 7) {
        throw ResourceLimit("exhaustive labeled corpus is capped at n <= 7");
    }
    for (const auto& g : gnp) {
        if (g.count < 0 || g.min_n < 1 || g.max_n < g.min_n) {
            throw InvalidArgument("gnp spec needs count >= 0 and 1 <= min_n <= max_n");
        }
        if (g.max_n > 200) {
            throw ResourceLimit("gnp targets are capped at 200 vertices");
        }
        if (g.p < 0 || g.p > 1) {
            throw InvalidArgument("gnp probability must lie in [0, 1]");
        }
    }
}

CorpusSpec corpus_spec_from_json(const json& j)
{
    try {
        CorpusSpec spec;
        spec.exhaustive_max_n = j.value("exhaustive_max_n", 0);
        spec.dedup = j.value("dedup", true);
        spec.constructions = j.value("constructions", false);
        spec.construction_seed = j.value("construction_seed", std::uint64_t{1});
        if (j.contains("gnp")) {
            for (const auto& g : j.at("gnp")) {
                GnpSpec s;
                s.count = g.value("count", 0);
                s.min_n = g.value("min_n", 1);
                s.max_n = g.value("max_n", 10);
                if (g.contains("n")) {
                    s.min_n = s.max_n = g.at("n").get<int>();
                }
                s.p = parse_rat(g.value("p", std::string("1/2")));
                s.seed = g.value("seed", std::uint64_t{1});
                spec.gnp.push_back(s);
            }
        }
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("corpus spec: ") + e.what());
    }
}

json corpus_spec_to_json(const CorpusSpec& spec)
{
    json gnps = json::array();
    for (const auto& g : spec.gnp) {
        gnps.push_back(json{{"count", g.count},
                            {"min_n", g.min_n},
                            {"max_n", g.max_n},
                            {"p", to_string(g.p)},
                            {"seed", g.seed}});
    }
    return json{{"exhaustive_max_n", spec.exhaustive_max_n},
                {"dedup", spec.dedup},
                {"gnp", gnps},
                {"constructions", spec.constructions},
                {"construction_seed", spec.construction_seed}};
}

void Corpus::for_each(const std::function<void(const CorpusTarget&)>& visit) const
{
    for (int n = 1; n <= exhaustive_max_n; ++n) {
        std::size_t index = 0;
        for_each_graph(n, dedup, [&](const Graph& g) {
            visit(CorpusTarget{"exhaustive-" + std::to_string(n) + ":" + std::to_string(index++), g});
        });
    }
    for (const auto& t : targets) {
        visit(t);
    }
}

std::size_t Corpus::size() const
{
    std::size_t total = targets.size();
    for (int n = 1; n <= exhaustive_max_n; ++n) {
        for_each_graph(n, dedup, [&](const Graph&) { ++total; });
    }
    return total;
}

Corpus build_corpus(const CorpusSpec& spec)
{
    spec.validate();
    Corpus corpus;
    corpus.exhaustive_max_n = spec.exhaustive_max_n;
    corpus.dedup = spec.dedup;
    for (const auto& g : spec.gnp) {
        const int span = g.max_n - g.min_n + 1;
        for (int i = 0; i < g.count; ++i) {
            Rng rng = Rng::stream(g.seed, static_cast<std::uint64_t>(i));
            const int n = g.min_n + static_cast<int>(rng.below(static_cast<std::uint64_t>(span)));
            corpus.targets.push_back(
                CorpusTarget{"gnp(n=" + std::to_string(n) + ",p=" + to_string(g.p) + ",seed=" +
                                 std::to_string(g.seed) + ")#" + std::to_string(i),
                             gnp(n, g.p, rng)});
        }
    }
    if (spec.constructions) {
        ProjectivePlaneSpec plane;
        plane.p = 5;
        plane.k = 2;
        corpus.targets.push_back(CorpusTarget{"red_line(p=5,k=2,seed=" + std::to_string(spec.construction_seed) + ")",
                                              red_line_graph(plane, spec.construction_seed).graph});
        corpus.targets.push_back(CorpusTarget{"behrend(30)", behrend_graph(30)});
        for (SimpleFamily kind : {SimpleFamily::half_clique, SimpleFamily::two_cliques,
                                  SimpleFamily::clique_plus_isolated, SimpleFamily::single_edge}) {
            for (int n : {4, 6, 8}) {
                corpus.targets.push_back(
                    CorpusTarget{to_string(kind) + "(" + std::to_string(n) + ")", simple_family(kind, n)});
            }
        }
    }
    return corpus;
}

std::string to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::holds:
        return "holds";
    case Verdict::violated:
        return "violated";
    case Verdict::skipped:
        return "skipped";
    }
    return "?";
}

int VerificationReport::exit_code() const
{
    if (!violations.empty()) {
        return 1;
    }
    if (!skipped.empty()) {
        return 4;
    }
    return 0;
}

namespace {

int sign_of(const Rat& x) { return sgn(x); }

/// sign(prod lhs - prod rhs) with factors t^power.
int compare_products(const std::vector<std::pair<Rat, unsigned long>>& lhs,
                     const std::vector<std::pair<Rat, unsigned long>>& rhs)
{
    Rat l = 1;
    for (const auto& [t, a] : lhs) {
        l *= pow(t, a);
    }
    Rat r = 1;
    for (const auto& [t, b] : rhs) {
        r *= pow(t, b);
    }
    return sign_of(l - r);
}

std::string witness_of(const FamilyInstance& target)
{
    if (const auto* g = std::get_if<Graph>(&target)) {
        return encode_graph6(*g);
    }
    return {};
}

/// Shared loop: `evaluate` fills the verdict or throws ResourceLimit.
VerificationReport run(const std::string& description, const Corpus& corpus, const CheckOptions& options,
                       const std::function<void(const CorpusTarget&, TargetVerdict&)>& evaluate)
{
    VerificationReport report;
    report.description = description;
    corpus.for_each([&](const CorpusTarget& target) {
        TargetVerdict v;
        v.tag = target.tag;
        v.witness = witness_of(target.target);
        try {
            evaluate(target, v);
        } catch (const ResourceLimit& e) {
            v.verdict = Verdict::skipped;
            v.note = e.what();
        }
        ++report.checked;
        if (v.verdict == Verdict::holds) {
            ++report.holds;
        } else if (v.verdict == Verdict::violated) {
            report.violations.push_back(v);
        } else {
            report.skipped.push_back(v);
        }
        if (v.verdict != Verdict::skipped) {
            const bool better = !report.min_slack ||
                                (v.slack_sign < report.min_slack->slack_sign) ||
                                (v.slack_sign == report.min_slack->slack_sign && v.log_slack &&
                                 (!report.min_slack->log_slack || *v.log_slack < *report.min_slack->log_slack));
            if (better) {
                report.min_slack = v;
            }
        }
        if (report.verdicts.size() < options.max_recorded) {
            report.verdicts.push_back(std::move(v));
        } else {
            report.verdicts_truncated = true;
        }
    });
    return report;
}

} // namespace

VerificationReport check_inequality(const Graph& g, const Graph& h, const Rat& c, const Corpus& corpus,
                                    const CheckOptions& options)
{
    const BigInt p = c.get_num();
    const BigInt q = c.get_den();
    if (!q.fits_ulong_p() || !p.fits_slong_p() || abs(p) > 100000 || q > 100000) {
        throw InvalidArgument("check_inequality: exponent numerator and denominator must be at most 100000");
    }
    const long pn = p.get_si();
    const unsigned long qd = q.get_ui();
    VerificationReport report = run(
        "t(G,T)^" + std::to_string(qd) + " >= t(H,T)^" + std::to_string(pn), corpus, options,
        [&](const CorpusTarget& target, TargetVerdict& v) {
            const Rat tg = instance_density(g, target.target, options.limits);
            const Rat th = instance_density(h, target.target, options.limits);
            if (pn >= 0) {
                v.slack_sign = compare_products({{tg, qd}}, {{th, static_cast<unsigned long>(pn)}});
            } else if (th == 0) {
                v.slack_sign = -1; // t(H)^c is infinite
            } else {
                v.slack_sign = compare_products({{tg, qd}, {th, static_cast<unsigned long>(-pn)}}, {{Rat(1), 1}});
            }
            v.verdict = v.slack_sign >= 0 ? Verdict::holds : Verdict::violated;
            if (tg > 0 && th > 0) {
                v.log_slack = log_rat(tg) - to_double(c) * log_rat(th);
            }
        });
    report.g6_g = encode_graph6(g);
    report.g6_h = encode_graph6(h);
    report.exponent = c;
    return report;
}

VerificationReport check_product_inequality(const std::vector<Monomial>& lhs, const std::vector<Monomial>& rhs,
                                            const std::string& description, const Corpus& corpus,
                                            const CheckOptions& options)
{
    return run(description, corpus, options, [&](const CorpusTarget& target, TargetVerdict& v) {
        std::vector<std::pair<Rat, unsigned long>> l, r;
        double log_l = 0;
        double log_r = 0;
        bool finite = true;
        for (const auto& m : lhs) {
            l.emplace_back(instance_density(m.graph, target.target, options.limits), m.power);
            finite = finite && l.back().first > 0;
            if (finite) {
                log_l += static_cast<double>(m.power) * log_rat(l.back().first);
            }
        }
        for (const auto& m : rhs) {
            r.emplace_back(instance_density(m.graph, target.target, options.limits), m.power);
            finite = finite && r.back().first > 0;
            if (finite) {
                log_r += static_cast<double>(m.power) * log_rat(r.back().first);
            }
        }
        v.slack_sign = compare_products(l, r);
        v.verdict = v.slack_sign >= 0 ? Verdict::holds : Verdict::violated;
        if (finite) {
            v.log_slack = log_l - log_r;
        }
    });
}

json report_to_json(const VerificationReport& report)
{
    auto verdict_json = [](const TargetVerdict& v) {
        json j{{"tag", v.tag}, {"verdict", to_string(v.verdict)}, {"slack_sign", v.slack_sign}};
        if (v.log_slack) {
            j["log_slack"] = *v.log_slack;
        }
        if (!v.witness.empty()) {
            j["graph6"] = v.witness;
        }
        if (!v.note.empty()) {
            j["note"] = v.note;
        }
        return j;
    };
    json j;
    j["description"] = report.description;
    if (!report.g6_g.empty()) {
        j["G"] = report.g6_g;
        j["H"] = report.g6_h;
        j["exponent"] = to_string(report.exponent);
    }
    j["checked"] = report.checked;
    j["holds"] = report.holds;
    j["violations"] = json::array();
    for (const auto& v : report.violations) {
        j["violations"].push_back(verdict_json(v));
    }
    j["skipped"] = json::array();
    for (const auto& v : report.skipped) {
        j["skipped"].push_back(verdict_json(v));
    }
    j["min_slack"] = report.min_slack ? verdict_json(*report.min_slack) : json(nullptr);
    j["verdicts"] = json::array();
    for (const auto& v : report.verdicts) {
        j["verdicts"].push_back(verdict_json(v));
    }
    j["verdicts_truncated"] = report.verdicts_truncated;
    j["corpus_valid"] = report.ok();
    return j;
}

TensorReport tensor_amplify(const Graph& g, const Graph& h, const Rat& c, const Graph& t, int rmax,
                            int max_square_vertices)
{
    if (rmax < 1 || rmax > 16) {
        throw InvalidArgument("tensor_amplify needs 1 <= rmax <= 16");
    }
    const Rat tg = density(g, t);
    const Rat th = density(h, t);
    if (tg <= 0 || th <= 0) {
        throw InvalidArgument("tensor_amplify needs positive densities on T");
    }
    const long p = c.get_num().get_si();
    const unsigned long q = c.get_den().get_ui();
    TensorReport report;
    for (int r = 1; r <= rmax; ++r) {
        // t(F, T^r) = t(F, T)^r
        const Rat gr = pow(tg, static_cast<unsigned long>(r));
        const Rat hr = pow(th, static_cast<unsigned long>(r));
        report.normalized_slack.push_back((log_rat(gr) - to_double(c) * log_rat(hr)) / r);
        int s = 0;
        if (p >= 0) {
            s = compare_products({{gr, q}}, {{hr, static_cast<unsigned long>(p)}});
        } else {
            s = compare_products({{gr, q}, {hr, static_cast<unsigned long>(-p)}}, {{Rat(1), 1}});
        }
        report.slack_sign.push_back(s);
    }
    if (t.num_vertices() <= max_square_vertices) {
        const Graph sq = tensor_product(t, t);
        report.square_identity = density(g, sq) == tg * tg && density(h, sq) == th * th;
    }
    return report;
}

VerificationReport search_problem6(int i, int j, const Corpus& corpus, const CheckOptions& options)
{
    if (!(i > j && j >= 1)) {
        throw InvalidArgument("search_problem6 needs i > j >= 1");
    }
    const unsigned long a = static_cast<unsigned long>(2 * i - 1 - 2 * j);
    const unsigned long b = static_cast<unsigned long>(2 * i + 1 - 2 * j);
    const Graph even = cycle(2 * j);
    const Graph odd_hi = cycle(2 * i + 1);
    const Graph odd_lo = cycle(2 * i - 1);
    const std::string description = "t(C_" + std::to_string(2 * j) + ")^2 t(C_" + std::to_string(2 * i + 1) + ")^" +
                                    std::to_string(a) + " >= t(C_" + std::to_string(2 * i - 1) + ")^" +
                                    std::to_string(b);
    return run(description, corpus, options, [&](const CorpusTarget& target, TargetVerdict& v) {
        const Rat te = instance_density(even, target.target, options.limits);
        const Rat th = instance_density(odd_hi, target.target, options.limits);
        const Rat tl = instance_density(odd_lo, target.target, options.limits);
        v.slack_sign = compare_products({{te, 2}, {th, a}}, {{tl, b}});
        v.verdict = v.slack_sign >= 0 ? Verdict::holds : Verdict::violated;
        if (te > 0 && th > 0 && tl > 0) {
            v.log_slack = 2 * log_rat(te) + a * log_rat(th) - b * log_rat(tl);
        }
        if (const auto* t = std::get_if<Graph>(&target.target)) {
            const BigInt he = cycle_hom_count(2 * j, *t);
            const BigInt hh = cycle_hom_count(2 * i + 1, *t);
            const BigInt hl = cycle_hom_count(2 * i - 1, *t);
            const int hom_sign = sgn(BigInt(pow(he, 2) * pow(hh, a) - pow(hl, b)));
            if (hom_sign != v.slack_sign) {
                throw std::logic_error("hom-form and t-form verdicts differ on " + target.tag);
            }
        }
    });
}

EqMainReport eq_main_report(int k, int l, const Graph& t)
{
    if (!(k > l && l >= 1)) {
        throw InvalidArgument("check_eq_main needs k > l >= 1");
    }
    if (t.num_vertices() > 64) {
        throw ResourceLimit("check_eq_main is capped at 64 target vertices");
    }
    EqMainReport report;
    report.chorded = hom_count(cycle_with_chord(k, l), t);
    report.cycle = cycle_hom_count(2 * k + 1, t);
    report.ordered_sum = 0;
    report.unordered_sum = 0;
    for (const auto& [u, v] : t.edges()) {
        const BigInt uv = rooted_cycle_hom(2 * l + 1, t, u, v) * rooted_cycle_hom(2 * k - 2 * l + 2, t, u, v);
        const BigInt vu = rooted_cycle_hom(2 * l + 1, t, v, u) * rooted_cycle_hom(2 * k - 2 * l + 2, t, v, u);
        report.unordered_sum += uv;
        report.ordered_sum += uv + vu;
    }
    return report;
}

bool check_eq_main(int k, int l, const Graph& t) { return eq_main_report(k, l, t).equal(); }

} // namespace homdom
