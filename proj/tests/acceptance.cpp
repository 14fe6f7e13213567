// Exit gate: each criterion prints one PASS/FAIL line with its runtime.

#include "support.hpp"
#include "totpos/completion.hpp"
#include "totpos/transforms.hpp"
#include "totpos/witnesses.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace totpos;

namespace {

Scalar q(long p, long d = 1) { return Scalar::rational(p, d); }
Scalar dec(const char* s) { return Scalar::parse(s); }

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) note << what;
        ok = ok && cond;
    }
};

bool criterion(int id, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= limit_s) o.expect(false, "runtime over " + std::to_string(limit_s) + " s");
    std::printf("AC%-2d %s  %7.2f s  %s\n", id, o.ok ? "PASS" : "FAIL", secs, o.note.str().c_str());
    std::fflush(stdout);
    return o.ok;
}

Matrix random_tp2(oracle::Gen& g) {
    Scalar a = g.rational(1, 9, 5), b = g.rational(1, 9, 5), c = g.rational(1, 9, 5);
    return Matrix::from_rows({{a, b}, {c, b * c / a + g.rational(1, 4, 7)}});
}

bool entries_match(const Matrix& v, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c, const Scalar& mu,
                   const Matrix& a) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double want = mu.to_double() * a(i, j).to_double();
            if (std::abs(v(r[i], c[j]).to_double() - want) > 1e-12 * std::max(1.0, want)) return false;
        }
    return true;
}

} // namespace

int main() {
    int failed = 0;

    failed += !criterion(1, 1, [](Outcome& o) {
        o.expect(std::abs(det(matrix_C(128)).to_double()) <= 1e-12, "|det C| too large");
        for (const char* c : {"1", "2"})
            for (const char* a : {"0.5", "1", "2", "3"}) {
                FormulaCheck f = verify_detC_formula(dec(c), dec(a), 128);
                o.expect(f.rel_error <= 1e-9, std::string("det formula off at c=") + c + " alpha=" + a);
            }
    });

    failed += !criterion(2, 10, [](Outcome& o) {
        Certificate c = is_tn(hadamard_power(matrix_C(128), dec("0.9")));
        o.expect(c.fails() && c.witness && c.witness->index.size() == 3, "C^0.9 lacks a 3x3 witness");
        for (std::uint64_t s = 0; s < 200; ++s) {
            Matrix m = random_tn(3, 3, s % 3 != 0, 7000 + s);
            for (const char* a : {"1", "1.5", "2"})
                o.expect(is_tn(hadamard_power(m, dec(a))).holds(), "random TN^alpha failed for alpha=" + std::string(a));
        }
    });

    failed += !criterion(3, 30, [](Outcome& o) {
        for (const char* e : {"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"})
            for (const char* x : {"0.1", "1", "10"}) o.expect(is_tn(family_N(dec(e), dec(x))).holds(), "N not TN");
        FalsifyResult r = falsify(FunctionDescriptor::power(q(1), q(2)), {Mode::TN, 4});
        o.expect(r.counterexample && r.counterexample->family.rfind("N(", 0) == 0, "no N-family counterexample");
        if (r.counterexample) {
            o.expect(is_tn(r.counterexample->matrix).holds(), "counterexample source not TN");
            o.expect(is_tn(hadamard_power(r.counterexample->matrix, q(2))).fails(), "counterexample does not re-verify");
        }
        const std::vector<Scalar> xs{dec("0.001"), dec("0.002"), dec("0.004")};
        for (const char* e : {"0.5", "0.1"}) {
            ExpansionFit f = verify_N_expansion(dec(e), q(2), xs, 128);
            o.expect(f.cubic_rel_error <= 0.05, std::string("cubic coefficient off at eps=") + e);
        }
    });

    failed += !criterion(4, 10, [](Outcome& o) {
        bool found = false;
        for (int k = 0; k <= 40 && !found; ++k) {
            // x = 10^{-k/4}
            Scalar x = Scalar::parse_float("10", 128);
            x = Scalar(boost::multiprecision::pow(x.flt(), make_float(-k / 4.0, 128)));
            Matrix t = family_T(x);
            o.expect(is_tn(t).holds(), "T(x) not TN");
            found = minor(hadamard_power(t, q(2)), {{0, 1, 2, 3}, {1, 2, 3, 4}}).sign() < 0;
        }
        o.expect(found, "no x with a negative upper-right minor");
    });

    failed += !criterion(5, 1, [](Outcome& o) {
        Matrix d = moment_two_point(q(1, 2), 4);
        Certificate bad = is_pos_def(hadamard_power(d, dec("1.5")));
        o.expect(bad.fails() && bad.witness && bad.witness->value.sign() < 0, "D^1.5 not rejected");
        // D^2 is a three-atom moment matrix, so rank 3 and exactly singular:
        // "passes" means not refuted, with every leading minor >= -1e-12.
        Matrix d2 = hadamard_power(d, q(2));
        o.expect(is_pos_def(d2.to_float(128)).verdict != Verdict::fails, "D^2 refuted");
        for (std::size_t k = 1; k <= 4; ++k) o.expect(det(d2.block(0, 0, k, k)).to_double() >= -1e-12, "D^2 minor negative");
        o.expect(rank(d2) == 3, "D^2 rank is not 3");
    });

    failed += !criterion(6, 60, [](Outcome& o) {
        oracle::Gen g(606);
        for (int t = 0; t < 500; ++t) {
            Matrix a = random_tp2(g);
            const std::size_t k = 2 + t % 5;
            VandermondeEmbedding e = embed_2x2_vandermonde(a, k, 2 + (t / 5) % 5);
            Matrix v = e.realize();
            o.expect(is_tp(v).holds(), "embedding not TP");
            o.expect(entries_match(v, {0, 1}, {0, 1}, e.mu, a), "embedding misses the target");
            for (std::size_t p = 0; p < 4; ++p)
                for (std::size_t p2 = p + 1; p2 < 4; ++p2)
                    for (std::size_t c = 0; c < 4; ++c)
                        for (std::size_t c2 = c + 1; c2 < 4; ++c2) {
                            VandermondeEmbedding x = embed_2x2_at_position(a, 4, 4, p, p2, c, c2);
                            Matrix w = x.realize();
                            o.expect(is_tp(w).holds(), "positioned embedding not TP");
                            o.expect(entries_match(w, {p, p2}, {c, c2}, x.mu, a), "positioned embedding misses the target");
                        }
        }
        for (std::size_t d = 2; d <= 6; ++d)
            o.expect(is_tp_hankel(complete_hankel_sym(q(1), q(1, 2), q(1, 2), d).matrix).holds(), "Hankel completion not TP");
        const Matrix t = Matrix::from_rows({{q(1), q(1, 2)}, {q(1, 2), q(1, 2)}});
        for (auto [n, k, N] : std::vector<std::array<std::size_t, 3>>{{0, 1, 2}, {1, 1, 3}, {2, 2, 4}, {3, 1, 5}}) {
            HankelCompletion h = embed_equally_spaced(t, n, k, N);
            o.expect(is_tp_hankel(h.matrix).holds(), "equally spaced embedding not TP");
            for (std::size_t i = 0; i < 3; ++i)
                o.expect(std::abs(h.moments[n + i * k].to_double() - t(i / 2, i - i / 2).to_double()) <= 1e-12,
                         "prescribed entry missed");
        }
    });

    failed += !criterion(7, 5, [](Outcome& o) {
        std::vector<Scalar> s;
        for (long k = 0; k <= 6; ++k) s.push_back(pow_int(q(1), k) + pow_int(q(2), k) + pow_int(q(3), k) + pow_int(q(4), k));
        o.expect(is_tp_hankel(Matrix::hankel(s, 4)).holds(), "input not TP Hankel");
        BackwardsExtension one = extend_backwards(s);
        o.expect(is_tp_hankel(one.matrix).holds(), "first extension not TP");
        BackwardsExtension two = extend_backwards(one.moments);
        o.expect(is_tp_hankel(two.matrix).holds(), "second extension not TP");
        bool rejected = false;
        try {
            extend_backwards(s, q(0));
        } catch (const VerificationError& e) {
            rejected = e.certificate.fails();
        }
        o.expect(rejected, "margin 0 accepted");
    });

    failed += !criterion(8, 30, [](Outcome& o) {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const std::size_t m = 1 + s % 5, n = 1 + (s / 5) % 5;
            Matrix a = random_tn(m, n, true, 8000 + s);
            Densification d = densify_to_tp(a, 1e-3);
            o.expect(is_tp(d.matrix).holds(), "densified matrix not TP");
            o.expect((d.matrix - a).norm_inf() <= 1e-3, "densified matrix too far");
        }
        bool refused = false;
        try {
            densify_to_tp(random_tn(4, 4, false, 99), 1e-3);
        } catch (const Unsupported& e) {
            refused = std::string(e.what()) == "Whitney densification implemented only for full-rank TN";
        }
        o.expect(refused, "rank-deficient input not refused");
    });

    failed += !criterion(9, 300, [](Outcome& o) {
        for (Mode m : {Mode::TN, Mode::TP, Mode::TN_SYM, Mode::TP_SYM, Mode::HANKEL_FIXED})
            for (std::size_t d = 2; d <= 5; ++d)
                for (const char* a : {"0", "0.5", "0.9", "1", "1.5", "2", "2.5", "3"}) {
                    const PreserverQuery pq{m, d};
                    const bool pres = is_power_preserver(pq, q(1), dec(a));
                    const bool found = falsify(FunctionDescriptor::power(q(1), dec(a)), pq).counterexample.has_value();
                    o.expect(pres != found, to_string(m) + std::string(" delta=") + std::to_string(d) + " alpha=" + a + " disagrees");
                }
    });

    failed += !criterion(10, 60, [](Outcome& o) {
        oracle::Gen g(1010);
        for (int t = 0; t < 1000; ++t) {
            const std::size_t m = 1 + t % 6, n = 1 + (t / 6) % 6;
            Matrix a = t % 2 ? random_tp(std::max(m, n), 10000 + t).block(0, 0, m, n) : g.rational_matrix(m, n, 1, 5, 4);
            if (t % 7 == 0) a = a.to_float(128);
            CheckRequest fast{a}, full{a};
            fast.property = full.property = Property::TP;
            full.full_enumeration = true;
            o.expect(is_tp(fast).verdict == is_tp(full).verdict, "Fekete shortcut disagrees");
        }
        for (int t = 0; t < 200; ++t) {
            const std::size_t n = 1 + t % 6;
            std::vector<Scalar> s;
            if (t % 2) {
                Matrix h = random_hankel_tn(n, 11000 + t);
                for (std::size_t j = 0; j < n; ++j) s.push_back(h(0, j));
                for (std::size_t i = 1; i < n; ++i) s.push_back(h(i, n - 1));
            } else {
                for (std::size_t k = 0; k < 2 * n - 1; ++k) s.push_back(g.rational(1, 6, 3));
            }
            Matrix h = Matrix::hankel(s, n);
            CheckRequest full{h};
            full.property = Property::TP;
            full.full_enumeration = true;
            o.expect(is_tp_hankel(h).holds() == is_tp(full).holds(), "Hankel shortcut disagrees");
        }
    });

    std::printf("%d of 10 criteria failed\n", failed);
    return failed ? 1 : 0;
}
