#include "totpos/cli.hpp"

#include "totpos/completion.hpp"
#include "totpos/matrix_io.hpp"
#include "totpos/transforms.hpp"
#include "totpos/witnesses.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>

namespace totpos::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

std::vector<Scalar> parse_list(const std::string& text) {
    std::vector<Scalar> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(Scalar::parse(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

json witness_json(const MinorWitness& w) {
    return {{"rows", w.index.rows}, {"cols", w.index.cols}, {"value", w.value.str()}};
}

json certificate_json(const Certificate& c) {
    json j{{"verdict", to_string(c.verdict)},
           {"property", to_string(c.property)},
           {"contiguous_shortcut", c.contiguous_shortcut},
           {"deterministic", c.deterministic},
           {"minors_checked", c.minors_checked}};
    if (c.order) j["order"] = *c.order;
    if (c.witness) j["witness"] = witness_json(*c.witness);
    return j;
}

int exit_for(Verdict v) {
    switch (v) {
    case Verdict::holds: return ok;
    case Verdict::fails: return fails;
    case Verdict::inconclusive: return inconclusive;
    }
    return usage;
}

json scalars_json(const std::vector<Scalar>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s.str());
    return a;
}

// Float entries become their exact binary value.
Matrix to_exact(const Matrix& m) {
    return m.map([](const Scalar& s) {
        if (s.is_exact()) return s;
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), s.flt().backend().data());
        return Scalar(q);
    });
}

struct FunctionArgs {
    std::string fn;
    std::string power;

    void add(CLI::App* app) {
        auto* f = app->add_option("--fn", fn, "expression in x, e.g. \"exp(x)-1\"");
        auto* p = app->add_option("--power", power, "c,alpha for c*x^alpha");
        f->excludes(p);
    }

    FunctionDescriptor get() const {
        if (!fn.empty()) return FunctionDescriptor::expression(fn);
        if (power.empty()) throw UsageError("one of --fn or --power is required");
        const auto v = parse_list(power);
        if (v.size() != 2) throw UsageError("--power takes c,alpha");
        if (v[0].sign() == 0) return FunctionDescriptor::constant(v[0]);
        return FunctionDescriptor::power(v[0], v[1]);
    }
};

Matrix entries_2x2(const std::string& file, const std::string& entries) {
    if (!file.empty()) return read_matrix_file(file);
    const auto v = parse_list(entries);
    if (v.size() != 4) throw UsageError("--entries takes a,b,c,d (row-major 2x2)");
    return Matrix::from_rows({{v[0], v[1]}, {v[2], v[3]}});
}

json embedding_json(const VandermondeEmbedding& e) {
    return {{"mu", e.mu.str()},
            {"u", scalars_json(e.u)},
            {"alpha", scalars_json(e.alpha)},
            {"position", {{"p", e.p}, {"p2", e.p2}, {"q", e.q}, {"q2", e.q2}}},
            {"case", e.case_tag},
            {"matrix", matrix_to_json(e.realize())},
            {"certificate", certificate_json(e.certificate)},
            {"verdict", to_string(e.certificate.verdict)}};
}

json completion_json(const HankelCompletion& h) {
    return {{"s", h.s.str()},
            {"scale", h.scale.str()},
            {"moments", scalars_json(h.moments)},
            {"n", h.n},
            {"k", h.k},
            {"N", h.N},
            {"residual", h.residual},
            {"matrix", matrix_to_json(h.matrix)},
            {"certificate", certificate_json(h.certificate)},
            {"verdict", to_string(h.certificate.verdict)}};
}

Matrix make_witness(const std::string& family, std::map<std::string, std::string> p, unsigned bits) {
    auto get = [&](const std::string& k, const char* dflt = nullptr) {
        auto it = p.find(k);
        if (it != p.end()) return Scalar::parse(it->second);
        if (dflt) return Scalar::parse(dflt);
        throw UsageError("family " + family + " needs --" + k);
    };
    auto size = [&](const char* dflt) {
        const Scalar s = get("size", dflt);
        if (!s.is_integer() || s.sign() <= 0) throw UsageError("--size must be a positive integer");
        return static_cast<std::size_t>(s.exact().get_num().get_ui());
    };
    const std::string f = lower(family);
    if (f == "a") return family_A(get("x"), get("y"));
    if (f == "b") return family_B(get("x"), get("y"));
    if (f == "a_tp") return family_A_tp(get("a", "1"), get("x"), get("y"), get("eps"));
    if (f == "b_tp") return family_B_tp(get("a", "1"), get("x"), get("y"), get("eps"));
    if (f == "monotone") return monotone_pair(get("x"), get("y"));
    if (f == "sym_rank1") return sym_rank1(get("x"), get("y"), bits);
    if (f == "m_tp") return family_M_tp(get("x"), get("y"), get("eps"), bits);
    if (f == "c") return matrix_C(bits);
    if (f == "n") return family_N(get("eps"), get("x"));
    if (f == "t") return family_T(get("x"));
    if (f == "d") return moment_two_point(get("x"), size("4"));
    throw UsageError("unknown family '" + family + "' (A, B, A_tp, B_tp, monotone, sym_rank1, M_tp, C, N, T, D)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (const char* env = std::getenv("TOTPOS_PRECISION")) {
        try {
            set_default_precision(static_cast<unsigned>(std::stoul(env)));
        } catch (const std::exception&) {
            err << "totpos: invalid TOTPOS_PRECISION '" << env << "'\n";
            return usage;
        }
    }

    CLI::App app{"Total positivity checkers, preserver classification and TP completions", "totpos"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned precision = 0;
    app.add_option("--precision", precision, "float precision in bits (default 128)");

    std::function<int()> action;
    json report;

    // check
    auto* check_cmd = app.add_subcommand("check", "test a matrix for TN, TP, TN_r, TP_r, PD or TP Hankel");
    std::string property, file;
    bool exact = false, as_float = false, full = false, strict = false;
    std::optional<double> tol;
    std::size_t order = 0, size_guard = 10;
    check_cmd->add_option("--property", property, "tn | tp | tn_r | tp_r | pd | tp_hankel")->required();
    check_cmd->add_option("--file,file", file, "matrix file (JSON or CSV)")->required();
    check_cmd->add_option("--order", order, "order r for tn_r / tp_r");
    auto* exact_flag = check_cmd->add_flag("--exact", exact, "convert float entries to exact rationals");
    check_cmd->add_flag("--float", as_float, "convert exact entries to floats")->excludes(exact_flag);
    check_cmd->add_option("--tol", tol, "absolute float tolerance");
    check_cmd->add_flag("--deterministic", "fixed evaluation order (always the case here)");
    check_cmd->add_flag("--full", full, "TP: enumerate all minors instead of the contiguous ones");
    check_cmd->add_flag("--strict", strict, "TN: float minors within tolerance are inconclusive");
    check_cmd->add_option("--size-guard", size_guard, "largest order accepted for full enumeration");
    check_cmd->callback([&] {
        action = [&] {
            Matrix m = read_matrix_file(file);
            if (exact) m = to_exact(m);
            if (as_float) m = m.to_float(default_precision());
            const std::string p = lower(property);
            Certificate c;
            if (p == "pd") c = is_pos_def(m);
            else if (p == "tp_hankel") c = is_tp_hankel(m);
            else {
                CheckRequest req{m};
                if (p == "tn") req.property = order ? Property::TN_r : Property::TN;
                else if (p == "tp") req.property = order ? Property::TP_r : Property::TP;
                else if (p == "tn_r") req.property = Property::TN_r;
                else if (p == "tp_r") req.property = Property::TP_r;
                else throw UsageError("unknown property '" + property + "'");
                if ((req.property == Property::TN_r || req.property == Property::TP_r) && !order)
                    throw UsageError("--order is required for " + property);
                if (order) req.order = order;
                req.full_enumeration = full;
                req.boundary = strict ? BoundaryPolicy::strict : BoundaryPolicy::zero;
                req.tol = tol;
                req.size_guard = size_guard;
                c = check(req);
            }
            report = certificate_json(c);
            report["command"] = "check";
            report["rows"] = m.rows();
            report["cols"] = m.cols();
            report["scalar"] = m.is_exact() ? "rational" : "float";
            return exit_for(c.verdict);
        };
    });

    // apply
    auto* apply = app.add_subcommand("apply", "apply F entrywise");
    FunctionArgs apply_fn;
    apply_fn.add(apply);
    std::string apply_file;
    apply->add_option("--file,file", apply_file)->required();
    apply->callback([&] {
        action = [&] {
            const FunctionDescriptor f = apply_fn.get();
            const Matrix m = read_matrix_file(apply_file);
            report = {{"command", "apply"}, {"function", f.describe()}, {"matrix", matrix_to_json(apply_entrywise(m, f))}};
            return static_cast<int>(ok);
        };
    });

    // classify / is-preserver
    std::string mode_text = "tn";
    std::size_t delta = 2;
    auto* classify = app.add_subcommand("classify", "preserver class for a mode and size");
    classify->add_option("--mode", mode_text, "tn | tp | tn_sym | tp_sym | hankel_fixed | hankel_all")->required();
    classify->add_option("--delta", delta, "matrix size");
    classify->callback([&] {
        action = [&] {
            const PreserverQuery q{parse_mode(mode_text), delta};
            report = {{"command", "classify"}, {"mode", to_string(q.mode)}, {"delta", delta},
                      {"class", classify_preservers(q).describe()}};
            return static_cast<int>(ok);
        };
    });

    auto* is_pres = app.add_subcommand("is-preserver", "does c*x^alpha preserve the mode at this size");
    std::string pres_power;
    is_pres->add_option("--mode", mode_text)->required();
    is_pres->add_option("--delta", delta);
    is_pres->add_option("--power", pres_power, "c,alpha")->required();
    is_pres->callback([&] {
        action = [&] {
            const PreserverQuery q{parse_mode(mode_text), delta};
            const auto v = parse_list(pres_power);
            if (v.size() != 2) throw UsageError("--power takes c,alpha");
            const bool yes = is_power_preserver(q, v[0], v[1]);
            report = {{"command", "is-preserver"}, {"mode", to_string(q.mode)}, {"delta", delta},
                      {"c", v[0].str()}, {"alpha", v[1].str()}, {"preserver", yes},
                      {"class", classify_preservers(q).describe()}, {"verdict", yes ? "holds" : "fails"}};
            return static_cast<int>(yes ? ok : fails);
        };
    });

    // falsify
    auto* fals = app.add_subcommand("falsify", "search the witness families for a counterexample");
    FunctionArgs fals_fn;
    fals_fn.add(fals);
    FalsifyOptions fopts;
    fals->add_option("--mode", mode_text)->required();
    fals->add_option("--delta", delta);
    fals->add_option("--budget", fopts.budget);
    fals->add_option("--seed", fopts.seed);
    fals->add_option("--samples", fopts.random_samples, "random sources per size");
    fals->callback([&] {
        action = [&] {
            const PreserverQuery q{parse_mode(mode_text), delta};
            const FunctionDescriptor f = fals_fn.get();
            const FalsifyResult r = falsify(f, q, fopts);
            report = {{"command", "falsify"}, {"function", f.describe()}, {"mode", to_string(q.mode)},
                      {"delta", delta}, {"examined", r.examined}, {"domain_errors", r.domain_errors}};
            if (!r.counterexample) {
                report["verdict"] = "holds";
                report["counterexample"] = nullptr;
                return static_cast<int>(ok);
            }
            const auto& ce = *r.counterexample;
            report["verdict"] = "fails";
            report["counterexample"] = {{"family", ce.family},
                                        {"matrix", matrix_to_json(ce.matrix)},
                                        {"transformed", matrix_to_json(ce.transformed)},
                                        {"source", certificate_json(ce.source)},
                                        {"violation", certificate_json(ce.violation)}};
            return static_cast<int>(fails);
        };
    });

    // witness
    auto* wit = app.add_subcommand("witness", "build a named witness matrix");
    std::string family, params;
    std::map<std::string, std::string> named;
    wit->add_option("--family", family)->required();
    wit->add_option("--params", params, "k=v,... (x, y, eps, a, size)");
    for (const char* k : {"x", "y", "eps", "a", "size"}) wit->add_option(std::string("--") + k, named[k]);
    wit->callback([&] {
        action = [&] {
            std::map<std::string, std::string> p;
            for (const auto& [k, v] : named)
                if (!v.empty()) p[k] = v;
            std::size_t pos = 0;
            while (pos < params.size()) {
                auto comma = params.find(',', pos);
                if (comma == std::string::npos) comma = params.size();
                const std::string kv = params.substr(pos, comma - pos);
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw UsageError("--params entries look like k=v");
                p[kv.substr(0, eq)] = kv.substr(eq + 1);
                pos = comma + 1;
            }
            const Matrix m = make_witness(family, p, default_precision());
            const Certificate tn = is_tn(m);
            report = {{"command", "witness"}, {"family", family}, {"matrix", matrix_to_json(m)},
                      {"tn", certificate_json(tn)}, {"verdict", to_string(tn.verdict)}};
            if (m.square()) report["det"] = det(m).str();
            return static_cast<int>(ok);
        };
    });

    // embed / embed-at
    std::string efile, eentries;
    std::size_t em = 3, en = 3, p = 0, p2 = 1, q = 0, q2 = 1;
    auto* embed = app.add_subcommand("embed", "embed a TP 2x2 matrix in a generalized Vandermonde matrix");
    auto* embed_at = app.add_subcommand("embed-at", "as embed, at rows (p, p2) and columns (q, q2)");
    for (auto* sub : {embed, embed_at}) {
        sub->add_option("--file", efile, "2x2 matrix file");
        sub->add_option("--entries", eentries, "a,b,c,d row-major");
        sub->add_option("--m", em, "rows")->required();
        sub->add_option("--n", en, "columns")->required();
    }
    embed_at->add_option("--p", p)->required();
    embed_at->add_option("--p2", p2)->required();
    embed_at->add_option("--q", q)->required();
    embed_at->add_option("--q2", q2)->required();
    embed->callback([&] {
        action = [&] {
            report = embedding_json(embed_2x2_vandermonde(entries_2x2(efile, eentries), em, en));
            report["command"] = "embed";
            return static_cast<int>(ok);
        };
    });
    embed_at->callback([&] {
        action = [&] {
            report = embedding_json(embed_2x2_at_position(entries_2x2(efile, eentries), em, en, p, p2, q, q2));
            report["command"] = "embed-at";
            return static_cast<int>(ok);
        };
    });

    // complete-hankel / embed-hankel
    std::string ha, hb, hc;
    std::size_t hn = 0, hk = 1, hN = 2;
    auto* ch = app.add_subcommand("complete-hankel", "TP Hankel completion of [[a, b], [b, c]]");
    auto* eh = app.add_subcommand("embed-hankel", "place a, b, c at s_n, s_{n+k}, s_{n+2k} of a TP Hankel matrix");
    for (auto* sub : {ch, eh}) {
        sub->add_option("--a", ha)->required();
        sub->add_option("--b", hb)->required();
        sub->add_option("--c", hc)->required();
    }
    ch->add_option("--delta", delta)->required();
    eh->add_option("--n", hn);
    eh->add_option("--k", hk);
    eh->add_option("--N", hN);
    ch->callback([&] {
        action = [&] {
            report = completion_json(complete_hankel_sym(Scalar::parse(ha), Scalar::parse(hb), Scalar::parse(hc), delta));
            report["command"] = "complete-hankel";
            return static_cast<int>(ok);
        };
    });
    eh->callback([&] {
        action = [&] {
            const Matrix t = Matrix::from_rows({{Scalar::parse(ha), Scalar::parse(hb)}, {Scalar::parse(hb), Scalar::parse(hc)}});
            report = completion_json(embed_equally_spaced(t, hn, hk, hN));
            report["command"] = "embed-hankel";
            return static_cast<int>(ok);
        };
    });

    // extend-backwards
    auto* eb = app.add_subcommand("extend-backwards", "prepend s_-1, s_-2 to a TP Hankel moment sequence");
    std::string moments, margin, ebfile;
    eb->add_option("--moments", moments, "s_0,...,s_2N");
    eb->add_option("--file", ebfile, "square Hankel matrix file");
    eb->add_option("--margin", margin, "amount added above each root (default max(1, |root|))");
    eb->callback([&] {
        action = [&] {
            std::vector<Scalar> s;
            if (!ebfile.empty()) {
                const Matrix h = read_matrix_file(ebfile);
                if (!h.square()) throw UsageError("Hankel matrix must be square");
                for (std::size_t j = 0; j < h.cols(); ++j) s.push_back(h(0, j));
                for (std::size_t i = 1; i < h.rows(); ++i) s.push_back(h(i, h.cols() - 1));
            } else if (!moments.empty()) {
                s = parse_list(moments);
            } else {
                throw UsageError("one of --moments or --file is required");
            }
            std::optional<Scalar> mg;
            if (!margin.empty()) mg = Scalar::parse(margin);
            const BackwardsExtension e = extend_backwards(s, mg);
            report = {{"command", "extend-backwards"}, {"s_-1", e.s_m1.str()}, {"s_-2", e.s_m2.str()},
                      {"root_-1", e.root1.str()}, {"root_-2", e.root2.str()},
                      {"margin_-1", e.margin1.str()}, {"margin_-2", e.margin2.str()},
                      {"moments", scalars_json(e.moments)}, {"matrix", matrix_to_json(e.matrix)},
                      {"certificate", certificate_json(e.certificate)}, {"verdict", to_string(e.certificate.verdict)}};
            return static_cast<int>(ok);
        };
    });

    // densify
    auto* dens = app.add_subcommand("densify", "perturb a full-rank TN matrix into a TP one");
    std::string dfile;
    double dtol = 1e-3;
    dens->add_option("--file,file", dfile)->required();
    dens->add_option("--tol", dtol, "bound on the infinity-norm distance");
    dens->callback([&] {
        action = [&] {
            const Densification d = densify_to_tp(read_matrix_file(dfile), dtol);
            report = {{"command", "densify"}, {"delta", d.delta.str()}, {"distance", d.distance},
                      {"matrix", matrix_to_json(d.matrix)}, {"certificate", certificate_json(d.certificate)},
                      {"verdict", to_string(d.certificate.verdict)}};
            return static_cast<int>(ok);
        };
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "totpos: " << e.what() << "\n";
        return usage;
    }

    try {
        if (precision) set_default_precision(precision);
        const int code = action();
        out << report.dump(2) << "\n";
        return code;
    } catch (const VerificationError& e) {
        report = {{"error", e.what()}, {"certificate", certificate_json(e.certificate)},
                  {"verdict", to_string(e.certificate.verdict)}};
        out << report.dump(2) << "\n";
        err << "totpos: " << e.what() << "\n";
        return fails;
    } catch (const std::exception& e) {
        err << "totpos: " << e.what() << "\n";
        return usage;
    }
}

} // namespace totpos::cli
