#include "totpos/transforms.hpp"

#include "totpos/completion.hpp"
#include "totpos/witnesses.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <tuple>

namespace totpos {

namespace {

bool tp_mode(Mode m) { return m == Mode::TP || m == Mode::TP_SYM; }
bool sym_mode(Mode m) { return m == Mode::TN_SYM || m == Mode::TP_SYM; }
bool hankel_mode(Mode m) { return m == Mode::HANKEL_FIXED || m == Mode::HANKEL_ALL; }

// Three significant digits, as an exact rational.
Scalar decimal(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return Scalar::parse(buf);
}

std::vector<Scalar> log_grid(double lo, double hi, int points) {
    std::vector<Scalar> g;
    for (int i = 0; i < points; ++i)
        g.push_back(decimal(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1))));
    return g;
}

struct Source {
    Matrix m;
    std::string family;
    Certificate cert;
};

class Schedule {
public:
    Schedule(Mode mode, std::size_t delta, unsigned bits) : mode_(mode), delta_(delta), bits_(bits) {}

    void add(const Matrix& m, const std::string& family) {
        if (m.rows() != delta_ || m.cols() != delta_) return;
        const Structure st = structure_tests(m);
        if ((sym_mode(mode_) || hankel_mode(mode_)) && !st.symmetric) return;
        if (hankel_mode(mode_) && !st.hankel) return;
        Certificate c = tp_mode(mode_) ? is_tp(m) : is_tn(m);
        if (c.holds()) out.push_back({m, family, std::move(c)});
    }

    // TN modes: W ⊕ 0.
    void add_padded(const Matrix& w, const std::string& family) {
        if (w.rows() > delta_) return;
        if (w.rows() == delta_) return add(w, family);
        add(direct_sum(w, Matrix::zeros(delta_ - w.rows(), delta_ - w.rows(), w(0, 0))), family);
    }

    // TP modes: W itself when already TP, otherwise W ⊕ I, bumped at the
    // two corner diagonal entries when singular, then densified.
    void add_tp(const Matrix& w0, const std::string& family) {
        if (w0.rows() > delta_) return;
        Matrix w = w0.is_exact() ? w0 : w0.to_float(bits_);
        if (w.rows() == delta_ && is_tp(w).holds()) return add(w, family);
        if (w.rows() < delta_) w = direct_sum(w, Matrix::identity(delta_ - w.rows(), w(0, 0)));
        if (!is_tn(w).holds()) return;
        std::vector<std::pair<Matrix, std::string>> bases;
        if (rank(w) < delta_) {
            for (const char* t : {"1e-2", "1e-5"}) {
                Scalar tt = w.is_exact() ? Scalar::parse(t) : Scalar::parse_float(t, bits_);
                Matrix b = w.with_entry(0, 0, w(0, 0) + tt).with_entry(delta_ - 1, delta_ - 1, w(delta_ - 1, delta_ - 1) + tt);
                bases.emplace_back(b, family + " +" + t + " corners");
            }
        } else {
            bases.emplace_back(w, family);
        }
        for (const auto& [b, tag] : bases)
            for (double tol : {1e-3, 1e-6, 1e-9, 1e-12}) {
                try {
                    Densification d = densify_to_tp(b.to_float(bits_), tol);
                    char buf[48];
                    std::snprintf(buf, sizeof buf, " densified to %g", tol);
                    add(d.matrix, tag + buf);
                } catch (const std::exception&) {
                }
            }
    }

    // Mode-appropriate placement of a (square) TN source of any size.
    void add_any(const Matrix& w, const std::string& family) {
        if (tp_mode(mode_)) add_tp(w, family);
        else add_padded(w, family);
    }

    std::vector<Source> out;

private:
    Mode mode_;
    std::size_t delta_;
    unsigned bits_;
};

std::string tag2(const char* name, const Scalar& x, const Scalar& y) {
    return std::string(name) + "(" + x.str() + ", " + y.str() + ")";
}

// Deterministic part of the schedule for one mode and size.
std::vector<Source> build_schedule(Mode mode, std::size_t delta, unsigned bits) {
    Schedule s(mode, delta, bits);
    const bool tp = tp_mode(mode);
    const std::vector<Scalar> grid = log_grid(1e-2, 1e2, 7);

    // 2×2 families
    if (delta >= 2) {
        if (mode == Mode::TN) {
            for (const auto& x : grid)
                for (const auto& y : grid) {
                    s.add_padded(family_A(x, y), tag2("A", x, y));
                    s.add_padded(family_B(x, y), tag2("B", x, y));
                }
        }
        if (mode == Mode::TP) {
            const Scalar eps = Scalar::rational(1, 1000);
            for (const auto& x : grid)
                for (const auto& y : grid)
                    for (const auto& [a, tag] : {std::pair{family_A_tp(1, x, y, eps), tag2("A_tp", x, y)},
                                                 std::pair{family_B_tp(1, x, y, eps), tag2("B_tp", x, y)}}) {
                        if (delta == 2) {
                            s.add(a, tag);
                        } else {
                            try {
                                s.add(embed_2x2_vandermonde(a, delta, delta).realize(), tag + " in Vandermonde");
                            } catch (const std::exception&) {
                            }
                        }
                    }
        }
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = i + 1; j < grid.size(); ++j) {
                const Scalar &x = grid[i], &y = grid[j];
                std::vector<std::pair<Matrix, std::string>> pairs;
                if (!tp) pairs.emplace_back(sym_rank1(x, y, bits), tag2("sym_rank1", x, y));
                pairs.emplace_back(monotone_pair(x, y), tag2("monotone", x, y));
                if (tp || hankel_mode(mode)) {
                    pairs.emplace_back(family_M_tp(x, y, Scalar::rational(1, 1000), bits), tag2("M_tp", x, y));
                }
                for (auto& [a, tag] : pairs) {
                    if (delta == 2) {
                        s.add(a, tag);
                    } else if (mode == Mode::TN || mode == Mode::TN_SYM) {
                        s.add_padded(a, tag);
                    } else if (mode == Mode::TP) {
                        try {
                            s.add(embed_2x2_vandermonde(a, delta, delta).realize(), tag + " in Vandermonde");
                        } catch (const std::exception&) {
                        }
                    } else {
                        try {
                            s.add(complete_hankel_sym(a(0, 0), a(0, 1), a(1, 1), delta).matrix, tag + " in Hankel");
                        } catch (const std::exception&) {
                        }
                    }
                }
            }
    }

    if (!hankel_mode(mode)) {
        if (delta >= 3) {
            const Matrix c = matrix_C(bits);
            for (const char* k : {"1", "1/2", "2", "10"}) {
                s.add_any(c.scaled(Scalar::parse(k).as_float(bits)), std::string(k) + "*C");
            }
        }
        if (delta >= 4 && !sym_mode(mode)) {
            for (const char* e : {"0.05", "0.1", "0.3", "0.5", "0.9"})
                for (const auto& x : log_grid(1e-4, 1, 13))
                    s.add_any(family_N(Scalar::parse(e), x), tag2("N", Scalar::parse(e), x));
        }
        if (delta >= 5) {
            for (int k = -8; k <= 0; ++k) {
                Scalar x = pow_int(Scalar(10), k);
                s.add_any(family_T(x), "T(" + x.str() + ")");
            }
        }
    }

    if (delta >= 2) {
        for (const char* xs : {"0.1", "0.25", "0.5", "0.75", "0.9"}) {
            const Scalar x = Scalar::parse(xs);
            const std::string tag = "D(" + x.str() + ", " + std::to_string(delta) + ")";
            s.add_any(moment_two_point(x, delta), tag);
            // D plus light mass on further nodes: full rank, still Hankel.
            for (const char* eta : {"1e-4", "1e-8"}) {
                std::vector<Scalar> nodes{Scalar(1), x}, weights{Scalar(1), Scalar(1)};
                Scalar t = x;
                for (std::size_t k = 2; k < delta; ++k) {
                    t = t * x;
                    nodes.push_back(t);
                    weights.push_back(Scalar::parse(eta));
                }
                if (delta > 2) s.add(moment_matrix(nodes, weights, delta), tag + " + " + eta + " extra nodes");
            }
        }
    }
    return std::move(s.out);
}

using CacheKey = std::tuple<int, std::size_t, unsigned>;

std::shared_ptr<const std::vector<Source>> cached_schedule(Mode mode, std::size_t delta, unsigned bits) {
    static std::mutex mu;
    static std::map<CacheKey, std::shared_ptr<const std::vector<Source>>> cache;
    const CacheKey key{static_cast<int>(mode), delta, bits};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const std::vector<Source>>(build_schedule(mode, delta, bits));
    std::lock_guard lock(mu);
    return cache.emplace(key, built).first->second;
}

std::vector<Source> random_sources(Mode mode, std::size_t delta, std::size_t count, std::uint64_t seed) {
    Schedule s(mode, delta, default_precision());
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t sd = seed * 1000003 + i;
        const std::string tag = "random#" + std::to_string(i);
        switch (mode) {
        case Mode::TN: s.add(random_tn(delta, delta, i % 2 == 0, sd), tag); break;
        case Mode::TP: s.add(random_tp(delta, sd), tag); break;
        case Mode::TN_SYM: {
            Matrix w = random_tn(delta, delta, i % 2 == 0, sd);
            s.add(w * w.transpose(), tag + " WW^T");
            break;
        }
        case Mode::TP_SYM: {
            Matrix w = random_tp(delta, sd);
            s.add(w * w.transpose(), tag + " WW^T");
            break;
        }
        default: s.add(random_hankel_tn(delta, sd), tag + " moments"); break;
        }
    }
    return std::move(s.out);
}

} // namespace

FalsifyResult falsify(const FunctionDescriptor& f, const PreserverQuery& q, const FalsifyOptions& opts) {
    FalsifyResult res;
    const bool tp = tp_mode(q.mode);
    // TP-ized sources have minors far below 1; they are built at twice the
    // working precision so the source check stays definite.
    const unsigned bits = tp ? 2 * default_precision() : default_precision();

    std::vector<std::size_t> sizes;
    if (q.mode == Mode::HANKEL_ALL)
        for (std::size_t d = 2; d <= 6; ++d) sizes.push_back(d);
    else
        sizes.push_back(q.delta);

    auto try_source = [&](const Source& src) -> bool {
        if (res.examined >= opts.budget) return true;
        ++res.examined;
        Matrix img = src.m;
        try {
            img = apply_entrywise(src.m, f);
        } catch (const DomainError&) {
            ++res.domain_errors;
            return false;
        }
        Certificate v = tp ? is_tp(img) : is_tn(img);
        if (!v.fails()) return false;
        res.counterexample = CounterexampleCertificate{src.m, img, src.cert, std::move(v), src.family};
        return true;
    };

    for (std::size_t d : sizes) {
        for (const Source& src : *cached_schedule(q.mode, d, bits))
            if (try_source(src)) return res;
    }
    for (std::size_t d : sizes) {
        for (const Source& src : random_sources(q.mode, d, opts.random_samples, opts.seed))
            if (try_source(src)) return res;
    }
    return res;
}

namespace {

Scalar random_param(std::mt19937_64& rng, bool allow_zero) {
    static const long num[] = {1, 1, 1, 2, 3};
    static const long den[] = {3, 2, 1, 1, 1};
    if (allow_zero && rng() % 4 == 0) return Scalar(0);
    const auto k = rng() % 5;
    return Scalar::rational(num[k], den[k]);
}

// Lower unitriangular product over the reduced word
// (n-1), (n-2, n-1), ..., (1, ..., n-1) of the longest permutation.
Matrix lower_word(std::size_t n, std::mt19937_64& rng, bool allow_zero) {
    Matrix a = Matrix::identity(n);
    for (std::size_t k = n; k-- > 1;)
        for (std::size_t i = k; i < n; ++i) {
            Matrix e = Matrix::identity(n).with_entry(i, i - 1, random_param(rng, allow_zero));
            a = a * e;
        }
    return a;
}

} // namespace

Matrix random_tn(std::size_t m, std::size_t n, bool full_rank, std::uint64_t seed) {
    if (m == 0 || n == 0) throw std::invalid_argument("random_tn needs a non-empty shape");
    std::mt19937_64 rng(seed);
    const std::size_t r = std::min(m, n);
    Matrix d = Matrix::zeros(m, n);
    for (std::size_t i = 0; i < r; ++i) d = d.with_entry(i, i, random_param(rng, false));
    if (!full_rank) {
        const std::size_t z = rng() % r;
        d = d.with_entry(z, z, Scalar(0));
    }
    Matrix a = lower_word(m, rng, true) * d * lower_word(n, rng, true).transpose();
    if (!is_tn(a).holds()) throw std::logic_error("random_tn produced a matrix that is not TN");
    return a;
}

Matrix random_tp(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_tp needs n >= 1");
    std::mt19937_64 rng(seed);
    Matrix d = Matrix::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) d = d.with_entry(i, i, random_param(rng, false));
    Matrix a = lower_word(n, rng, false) * d * lower_word(n, rng, false).transpose();
    if (!is_tp(a).holds()) throw std::logic_error("random_tp produced a matrix that is not TP");
    return a;
}

Matrix random_hankel_tn(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_hankel_tn needs n >= 1");
    std::mt19937_64 rng(seed);
    static const char* pool[] = {"0", "1/3", "1/2", "1", "3/2", "2", "3"};
    std::vector<std::size_t> idx{0, 1, 2, 3, 4, 5, 6};
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t k = 1 + rng() % std::min<std::size_t>(n, idx.size());
    std::vector<Scalar> nodes, weights;
    for (std::size_t i = 0; i < k; ++i) {
        nodes.push_back(Scalar::parse(pool[idx[i]]));
        weights.push_back(random_param(rng, false));
    }
    Matrix a = moment_matrix(nodes, weights, n);
    if (!is_tn(a).holds()) throw std::logic_error("random_hankel_tn produced a matrix that is not TN");
    return a;
}

} // namespace totpos
