#include "convring/kernel.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "convring/numerics.hpp"

namespace convring {

// ---------------------------------------------------------------- types

Multiplicities::Multiplicities(std::map<unsigned long, unsigned long> counts) {
    for (const auto& [i, c] : counts) {
        if (i == 0) throw std::invalid_argument("block index 0 is not allowed");
        if (c != 0) counts_.emplace(i, c);
    }
}

unsigned long Multiplicities::at(unsigned long i) const noexcept {
    auto it = counts_.find(i);
    return it == counts_.end() ? 0 : it->second;
}

void Multiplicities::add(unsigned long i, unsigned long count) {
    if (i == 0) throw std::invalid_argument("block index 0 is not allowed");
    if (count != 0) counts_[i] += count;
}

mpz_class Multiplicities::block_count() const {
    mpz_class s = 0;
    for (const auto& [i, c] : counts_) {
        (void)i;
        s += c;
    }
    return s;
}

mpz_class Multiplicities::total_dimension() const {
    mpz_class s = 0;
    for (const auto& [i, c] : counts_) s += mpz_class(i) * mpz_class(c);
    return s;
}

unsigned long Multiplicities::max_index() const noexcept {
    return counts_.empty() ? 0 : counts_.rbegin()->first;
}

// ---------------------------------------------------------------- reducers
//
// Row-echelon accumulators: insert() reduces a vector against the stored
// basis and either absorbs it as a new pivot row (true) or reduces it to
// zero (false). One flavor per coefficient domain.

namespace {

// GF(2), rows packed 64 columns per word.
struct Gf2Reducer {
    unsigned long dim, words;
    std::vector<std::vector<uint64_t>> rows;
    std::vector<long> pivot_row;
    unsigned long rank = 0;

    explicit Gf2Reducer(unsigned long d) : dim(d), words((d + 63) / 64), pivot_row(d, -1) {}

    bool insert(std::vector<uint64_t> v) {
        for (;;) {
            long c = -1;
            for (unsigned long w = 0; w < words; ++w)
                if (v[w]) {
                    c = long(w * 64 + unsigned(__builtin_ctzll(v[w])));
                    break;
                }
            if (c < 0) return false;
            long r = pivot_row[c];
            if (r < 0) {
                pivot_row[c] = long(rows.size());
                rows.push_back(std::move(v));
                ++rank;
                return true;
            }
            const auto& w = rows[r];
            for (unsigned long k = unsigned(c) / 64; k < words; ++k) v[k] ^= w[k];
        }
    }
};

// Odd prime P known at compile time; uint16 lanes with lazy reduction.
// Lane growth per combine is at most (P-1)^2, so reductions can be batched.
template <unsigned long P>
struct FpReducer {
    static_assert(P >= 3 && P <= 211);
    unsigned long dim;
    std::vector<std::vector<uint16_t>> rows; // pivot entries normalized to 1
    std::vector<long> pivot_row;
    unsigned long rank = 0;

    explicit FpReducer(unsigned long d) : dim(d), pivot_row(d, -1) {}

    static uint16_t inverse(uint16_t a) {
        unsigned long r = 1, b = a, e = P - 2;
        while (e) {
            if (e & 1) r = r * b % P;
            b = b * b % P;
            e >>= 1;
        }
        return uint16_t(r);
    }

    bool insert(std::vector<uint16_t> v) {
        constexpr unsigned long headroom = (65535ul - (P - 1)) / ((P - 1) * (P - 1));
        uint16_t* vp = v.data();
        for (unsigned long k = 0; k < dim; ++k) vp[k] %= P;
        unsigned long combines = 0;
        for (unsigned long c = 0; c < dim; ++c) {
            uint16_t val = uint16_t(vp[c] % P);
            if (val == 0) {
                vp[c] = 0;
                continue;
            }
            long r = pivot_row[c];
            if (r < 0) {
                for (unsigned long k = c; k < dim; ++k) vp[k] %= P;
                const uint16_t inv = inverse(val);
                for (unsigned long k = c; k < dim; ++k) vp[k] = uint16_t(vp[k] * inv % P);
                pivot_row[c] = long(rows.size());
                rows.push_back(std::move(v));
                ++rank;
                return true;
            }
            const uint16_t f = uint16_t(P - val);
            const uint16_t* wp = rows[r].data();
            for (unsigned long k = c; k < dim; ++k) vp[k] = uint16_t(vp[k] + f * wp[k]);
            vp[c] = 0;
            if (++combines >= headroom) {
                for (unsigned long k = c + 1; k < dim; ++k) vp[k] %= P;
                combines = 0;
            }
        }
        return false;
    }
};

// Runtime odd prime p < 2^16; uint32 lanes, reduced after every combine.
struct FpReducerRt {
    unsigned long p, dim;
    std::vector<std::vector<uint32_t>> rows;
    std::vector<long> pivot_row;
    unsigned long rank = 0;

    FpReducerRt(unsigned long p_, unsigned long d) : p(p_), dim(d), pivot_row(d, -1) {}

    unsigned long inverse(unsigned long a) const {
        unsigned long r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }

    bool insert(std::vector<uint32_t> v) {
        uint32_t* vp = v.data();
        for (unsigned long k = 0; k < dim; ++k) vp[k] %= p;
        for (unsigned long c = 0; c < dim; ++c) {
            uint32_t val = vp[c];
            if (val == 0) continue;
            long r = pivot_row[c];
            if (r < 0) {
                const unsigned long inv = inverse(val);
                for (unsigned long k = c; k < dim; ++k)
                    vp[k] = uint32_t((unsigned long)vp[k] * inv % p);
                pivot_row[c] = long(rows.size());
                rows.push_back(std::move(v));
                ++rank;
                return true;
            }
            const unsigned long f = p - val;
            const uint32_t* wp = rows[r].data();
            for (unsigned long k = c; k < dim; ++k)
                vp[k] = uint32_t((vp[k] + f * wp[k]) % p);
        }
        return false;
    }
};

// Exact integer rows, content-stripped after every combine.
struct ZReducer {
    unsigned long dim;
    std::vector<std::vector<mpz_class>> rows;
    std::vector<long> pivot_row;
    unsigned long rank = 0;

    explicit ZReducer(unsigned long d) : dim(d), pivot_row(d, -1) {}

    static void strip(std::vector<mpz_class>& v, unsigned long from) {
        mpz_class g = 0;
        for (unsigned long k = from; k < v.size(); ++k) {
            if (v[k] == 0) continue;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[k].get_mpz_t());
            if (g == 1) return;
        }
        if (g <= 1) return;
        for (unsigned long k = from; k < v.size(); ++k)
            if (v[k] != 0) mpz_divexact(v[k].get_mpz_t(), v[k].get_mpz_t(), g.get_mpz_t());
    }

    bool insert(std::vector<mpz_class> v) {
        strip(v, 0);
        for (unsigned long c = 0; c < dim; ++c) {
            if (v[c] == 0) continue;
            long r = pivot_row[c];
            if (r < 0) {
                if (v[c] < 0)
                    for (unsigned long k = c; k < dim; ++k) v[k] = -v[k];
                pivot_row[c] = long(rows.size());
                rows.push_back(std::move(v));
                ++rank;
                return true;
            }
            const auto& w = rows[r];
            const mpz_class a = w[c], b = v[c];
            for (unsigned long k = c + 1; k < dim; ++k) v[k] = a * v[k] - b * w[k];
            v[c] = 0;
            strip(v, c + 1);
        }
        return false;
    }
};

// ------------------------------------------------------------- image chains
//
// rank(op^i) via im(op^{i+1}) = op(im(op^i)): keep a reduced basis, push it
// through the operator, re-reduce. A rank stall before zero means the
// operator is not nilpotent.

struct Gf2Ops {
    using Vec = std::vector<uint64_t>;
    using Reducer = Gf2Reducer;

    static std::vector<Vec> columns(const SparseMatrix& op) {
        const unsigned long words = (op.dim + 63) / 64;
        std::vector<Vec> out;
        out.reserve(op.dim);
        for (const auto& col : op.cols) {
            Vec v(words, 0);
            for (const auto& [row, val] : col) {
                (void)val;
                v[row / 64] ^= uint64_t(1) << (row % 64);
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    static Vec apply(const SparseMatrix& op, const Vec& w) {
        const unsigned long words = (op.dim + 63) / 64;
        Vec out(words, 0);
        for (unsigned long wd = 0; wd < words; ++wd) {
            uint64_t bits = w[wd];
            while (bits) {
                unsigned long j = wd * 64 + unsigned(__builtin_ctzll(bits));
                bits &= bits - 1;
                for (const auto& [row, val] : op.cols[j]) {
                    (void)val;
                    out[row / 64] ^= uint64_t(1) << (row % 64);
                }
            }
        }
        return out;
    }
};

template <unsigned long P>
struct FpOps {
    using Vec = std::vector<uint16_t>;
    using Reducer = FpReducer<P>;

    static std::vector<Vec> columns(const SparseMatrix& op) {
        std::vector<Vec> out;
        out.reserve(op.dim);
        for (const auto& col : op.cols) {
            Vec v(op.dim, 0);
            for (const auto& [row, val] : col) v[row] = uint16_t(val);
            out.push_back(std::move(v));
        }
        return out;
    }

    static Vec apply(const SparseMatrix& op, const Vec& w) {
        std::vector<uint32_t> acc(op.dim, 0);
        for (unsigned long j = 0; j < op.dim; ++j) {
            const uint32_t wj = w[j];
            if (!wj) continue;
            for (const auto& [row, val] : op.cols[j]) acc[row] += wj * uint32_t(val);
        }
        Vec out(op.dim);
        for (unsigned long k = 0; k < op.dim; ++k) out[k] = uint16_t(acc[k] % P);
        return out;
    }
};

struct RtOps {
    unsigned long p;
    using Vec = std::vector<uint32_t>;

    struct Reducer : FpReducerRt {
        Reducer(const RtOps& ops, unsigned long d) : FpReducerRt(ops.p, d) {}
    };

    std::vector<Vec> columns(const SparseMatrix& op) const {
        std::vector<Vec> out;
        out.reserve(op.dim);
        for (const auto& col : op.cols) {
            Vec v(op.dim, 0);
            for (const auto& [row, val] : col) v[row] = uint32_t(val);
            out.push_back(std::move(v));
        }
        return out;
    }

    Vec apply(const SparseMatrix& op, const Vec& w) const {
        std::vector<unsigned long> acc(op.dim, 0);
        for (unsigned long j = 0; j < op.dim; ++j) {
            const unsigned long wj = w[j];
            if (!wj) continue;
            for (const auto& [row, val] : op.cols[j]) acc[row] += wj * (unsigned long)val;
        }
        Vec out(op.dim);
        for (unsigned long k = 0; k < op.dim; ++k) out[k] = uint32_t(acc[k] % p);
        return out;
    }
};

struct ZOps {
    using Vec = std::vector<mpz_class>;
    using Reducer = ZReducer;

    static std::vector<Vec> columns(const SparseMatrix& op) {
        std::vector<Vec> out;
        out.reserve(op.dim);
        for (const auto& col : op.cols) {
            Vec v(op.dim);
            for (const auto& [row, val] : col) v[row] = static_cast<long>(val);
            out.push_back(std::move(v));
        }
        return out;
    }

    static Vec apply(const SparseMatrix& op, const Vec& w) {
        Vec out(op.dim);
        for (unsigned long j = 0; j < op.dim; ++j) {
            if (w[j] == 0) continue;
            for (const auto& [row, val] : op.cols[j]) out[row] += w[j] * static_cast<long>(val);
        }
        return out;
    }
};

template <class Ops, class... Extra>
RankProfile chain_profile(const SparseMatrix& op, const Ops& ops) {
    std::vector<typename Ops::Vec> vecs = ops.columns(op);
    std::vector<unsigned long> ranks{op.dim};
    for (;;) {
        typename Ops::Reducer red = [&] {
            if constexpr (std::is_constructible_v<typename Ops::Reducer, unsigned long>)
                return typename Ops::Reducer(op.dim);
            else
                return typename Ops::Reducer(ops, op.dim);
        }();
        for (auto& v : vecs) red.insert(std::move(v));
        const unsigned long r = red.rank;
        const unsigned long prev = ranks.back();
        ranks.push_back(r);
        if (r == 0) break;
        if (r >= prev) throw std::invalid_argument("operator is not nilpotent");
        vecs.clear();
        vecs.reserve(red.rows.size());
        for (const auto& row : red.rows) vecs.push_back(ops.apply(op, row));
    }
    return RankProfile{std::move(ranks)};
}

// -------------------------------------------------- graded additive path
//
// Multiplication by x + y is homogeneous of degree 1 on k[x,y]/(x^m, y^n),
// so its i-th power maps the degree-d piece V_d into V_{d+i} with matrix
// C(i, a'-a) on the monomial bases. Ranks add up over d, and each block is
// at most min(m, n) wide.

constexpr unsigned long m31 = 2147483647ul; // 2^31 - 1, the certificate prime

inline unsigned long fold31(unsigned long x) {
    x = (x & m31) + (x >> 31);
    x = (x & m31) + (x >> 31);
    return x >= m31 ? x - m31 : x;
}

unsigned long pow31(unsigned long b, unsigned long e) {
    unsigned long r = 1;
    while (e) {
        if (e & 1) r = fold31(r * b);
        b = fold31(b * b);
        e >>= 1;
    }
    return r;
}

// Dense echelon rank over F_{2^31-1} with branch-free folding reduction.
unsigned long dense_rank_m31(std::vector<std::vector<unsigned long>>& m) {
    if (m.empty()) return 0;
    const unsigned long nr = m.size(), nc = m[0].size();
    unsigned long rank = 0;
    for (unsigned long c = 0; c < nc && rank < nr; ++c) {
        unsigned long pr = rank;
        while (pr < nr && m[pr][c] == 0) ++pr;
        if (pr == nr) continue;
        std::swap(m[rank], m[pr]);
        const unsigned long inv = pow31(m[rank][c], m31 - 2);
        for (unsigned long k = c; k < nc; ++k) m[rank][k] = fold31(m[rank][k] * inv);
        for (unsigned long r = rank + 1; r < nr; ++r) {
            const unsigned long f = m[r][c];
            if (!f) continue;
            const unsigned long g = m31 - f;
            for (unsigned long k = c; k < nc; ++k) m[r][k] = fold31(m[r][k] + g * m[rank][k]);
        }
        ++rank;
    }
    return rank;
}

// Dense echelon rank mod a runtime prime (exotic characteristics).
unsigned long dense_rank_mod(std::vector<std::vector<unsigned long>>& m, unsigned long p) {
    if (m.empty()) return 0;
    const unsigned long nr = m.size(), nc = m[0].size();
    unsigned long rank = 0;
    for (unsigned long c = 0; c < nc && rank < nr; ++c) {
        unsigned long pr = rank;
        while (pr < nr && m[pr][c] == 0) ++pr;
        if (pr == nr) continue;
        std::swap(m[rank], m[pr]);
        unsigned long inv = 1, b = m[rank][c], e = p - 2;
        while (e) {
            if (e & 1) inv = inv * b % p;
            b = b * b % p;
            e >>= 1;
        }
        for (unsigned long k = c; k < nc; ++k) m[rank][k] = m[rank][k] * inv % p;
        for (unsigned long r = rank + 1; r < nr; ++r) {
            const unsigned long f = m[r][c];
            if (!f) continue;
            const unsigned long g = p - f;
            for (unsigned long k = c; k < nc; ++k) m[r][k] = (m[r][k] + g * m[rank][k]) % p;
        }
        ++rank;
    }
    return rank;
}

struct BlockShape {
    long cl, ch, rl, rh; // column exponents a in [cl, ch], row exponents a' in [rl, rh]
    unsigned long i;
    unsigned long rows() const { return (unsigned long)(rh - rl + 1); }
    unsigned long cols() const { return (unsigned long)(ch - cl + 1); }
    // entry (r, c) = C(i, delta), delta = (rl + r) - (cl + c), taken as zero
    // outside [0, i]
    long delta(unsigned long r, unsigned long c) const { return (rl + long(r)) - (cl + long(c)); }
};

template <class Red, class Lane>
unsigned long block_rank_lanes(const BlockShape& b, const std::vector<unsigned long>& pascal) {
    Red red(b.cols());
    for (unsigned long r = 0; r < b.rows() && red.rank < b.cols(); ++r) {
        std::vector<Lane> v(b.cols(), 0);
        for (unsigned long c = 0; c < b.cols(); ++c) {
            const long d = b.delta(r, c);
            if (d >= 0 && d <= long(b.i)) v[c] = Lane(pascal[d]);
        }
        red.insert(std::move(v));
    }
    return red.rank;
}

unsigned long block_rank_gf2(const BlockShape& b, const std::vector<unsigned long>& pascal) {
    Gf2Reducer red(b.cols());
    const unsigned long words = (b.cols() + 63) / 64;
    for (unsigned long r = 0; r < b.rows() && red.rank < b.cols(); ++r) {
        std::vector<uint64_t> v(words, 0);
        for (unsigned long c = 0; c < b.cols(); ++c) {
            const long d = b.delta(r, c);
            if (d >= 0 && d <= long(b.i) && pascal[d])
                v[c / 64] |= uint64_t(1) << (c % 64);
        }
        red.insert(std::move(v));
    }
    return red.rank;
}

unsigned long block_rank_char0(const BlockShape& b, const std::vector<unsigned long>& pascal31) {
    std::vector<std::vector<unsigned long>> m(b.rows(), std::vector<unsigned long>(b.cols(), 0));
    for (unsigned long r = 0; r < b.rows(); ++r)
        for (unsigned long c = 0; c < b.cols(); ++c) {
            const long d = b.delta(r, c);
            if (d >= 0 && d <= long(b.i)) m[r][c] = pascal31[d];
        }
    const unsigned long certified = dense_rank_m31(m);
    if (certified == std::min(b.rows(), b.cols())) return certified;
    // rank deficit mod the certificate prime: settle exactly
    std::vector<std::vector<mpz_class>> exact(b.rows(), std::vector<mpz_class>(b.cols()));
    for (unsigned long r = 0; r < b.rows(); ++r)
        for (unsigned long c = 0; c < b.cols(); ++c) {
            const long d = b.delta(r, c);
            if (d >= 0 && d <= long(b.i)) exact[r][c] = binomial_exact(b.i, (unsigned long)d);
        }
    return detail::bareiss_rank(std::move(exact));
}

unsigned long block_rank_rt(const BlockShape& b, const std::vector<unsigned long>& pascal,
                            unsigned long p) {
    std::vector<std::vector<unsigned long>> m(b.rows(), std::vector<unsigned long>(b.cols(), 0));
    for (unsigned long r = 0; r < b.rows(); ++r)
        for (unsigned long c = 0; c < b.cols(); ++c) {
            const long d = b.delta(r, c);
            if (d >= 0 && d <= long(b.i)) m[r][c] = pascal[d];
        }
    return dense_rank_mod(m, p);
}

RankProfile graded_additive_profile(unsigned long m, unsigned long n, const Characteristic& p) {
    const unsigned long dim = m * n;
    const long maxdeg = long(m + n) - 2;
    const unsigned long pv = p.value();
    const unsigned long mod = p.is_zero() ? m31 : pv;
    auto lo = [&](long d) { return std::max<long>(0, d - long(n) + 1); };
    auto hi = [&](long d) { return std::min<long>(long(m) - 1, d); };

    std::vector<unsigned long> ranks{dim};
    std::vector<unsigned long> pascal{1}; // C(i, .) mod `mod`, updated in place
    for (unsigned long i = 1;; ++i) {
        pascal.push_back(0);
        for (unsigned long k = i; k >= 1; --k) pascal[k] = (pascal[k] + pascal[k - 1]) % mod;
        unsigned long total = 0;
        for (long d = 0; d + long(i) <= maxdeg; ++d) {
            const long e = d + long(i);
            const BlockShape b{lo(d), hi(d), lo(e), hi(e), i};
            if (p.is_zero())
                total += block_rank_char0(b, pascal);
            else if (pv == 2)
                total += block_rank_gf2(b, pascal);
            else if (pv == 3)
                total += block_rank_lanes<FpReducer<3>, uint16_t>(b, pascal);
            else if (pv == 5)
                total += block_rank_lanes<FpReducer<5>, uint16_t>(b, pascal);
            else if (pv == 7)
                total += block_rank_lanes<FpReducer<7>, uint16_t>(b, pascal);
            else
                total += block_rank_rt(b, pascal, pv);
        }
        ranks.push_back(total);
        if (total == 0) break;
    }
    return RankProfile{std::move(ranks)};
}

} // namespace

namespace detail {

unsigned long bareiss_rank(std::vector<std::vector<mpz_class>> m) {
    if (m.empty() || m[0].empty()) return 0;
    const unsigned long nr = m.size(), nc = m[0].size();
    mpz_class prev = 1, q, rem;
    unsigned long rank = 0;
    for (unsigned long c = 0; c < nc && rank < nr; ++c) {
        unsigned long pr = rank;
        while (pr < nr && m[pr][c] == 0) ++pr;
        if (pr == nr) continue;
        std::swap(m[rank], m[pr]);
        for (unsigned long r = rank + 1; r < nr; ++r) {
            for (unsigned long k = c + 1; k < nc; ++k) {
                mpz_class num = m[r][k] * m[rank][c] - m[r][c] * m[rank][k];
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0) throw std::logic_error("fraction-free elimination lost exactness");
                m[r][k] = q;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

} // namespace detail

// ---------------------------------------------------------------- profiles

RankProfile rank_profile(const SparseMatrix& op) {
    if (op.cols.size() != op.dim)
        throw std::invalid_argument("operator column count does not match its dimension");
    if (op.dim == 0) return RankProfile{{0}};
    const Characteristic& p = op.characteristic;
    if (p.is_zero()) return chain_profile(op, ZOps{});
    switch (p.value()) {
        case 2: return chain_profile(op, Gf2Ops{});
        case 3: return chain_profile(op, FpOps<3>{});
        case 5: return chain_profile(op, FpOps<5>{});
        case 7: return chain_profile(op, FpOps<7>{});
        default:
            if (p.value() >= 65536)
                throw std::invalid_argument("elimination over characteristic " +
                                            std::to_string(p.value()) + " is not supported");
            return chain_profile(op, RtOps{p.value()});
    }
}

RankProfile law_rank_profile(unsigned long m, unsigned long n, const Characteristic& p,
                             const GroupLaw& law) {
    if (m < 1 || n < 1) throw std::invalid_argument("nilpotency orders must be positive");
    if (!(law.characteristic() == p))
        throw std::invalid_argument("law characteristic disagrees with the requested one");
    if (!validate_law(law)) throw std::invalid_argument("group law fails the unit axioms");
    if (!law.covers(m, n))
        throw std::invalid_argument("law truncation bounds do not cover (" + std::to_string(m) +
                                    ", " + std::to_string(n) + ")");
    if (law.is_additive()) return graded_additive_profile(m, n, p);
    return rank_profile(evaluate_on_nilpotents(law, m, n));
}

namespace {

std::string profile_defect(const std::vector<unsigned long>& r) {
    if (r.empty()) return "is empty";
    if (r.back() != 0) return "does not reach rank zero";
    for (size_t i = 0; i + 1 < r.size(); ++i)
        if (r[i] <= r[i + 1]) return "is not strictly decreasing";
    for (size_t i = 0; i + 2 < r.size(); ++i)
        if (r[i] - r[i + 1] < r[i + 1] - r[i + 2]) return "has increasing drops";
    return "";
}

} // namespace

Multiplicities multiplicities_from_ranks(const RankProfile& profile) {
    const auto& r = profile.ranks;
    if (r.size() == 1 && r[0] == 0) return Multiplicities{};
    const std::string defect = profile_defect(r);
    if (!defect.empty()) throw std::invalid_argument("rank profile " + defect);
    Multiplicities out;
    const size_t s = r.size() - 1;
    for (size_t i = 1; i <= s; ++i) {
        const unsigned long r_prev = r[i - 1];
        const unsigned long r_cur = r[i];
        const unsigned long r_next = i + 1 <= s ? r[i + 1] : 0;
        out.add(i, r_prev + r_next - 2 * r_cur);
    }
    return out;
}

HilbertProfile hilbert_profile(unsigned long m, unsigned long n, const Characteristic& p,
                               const GroupLaw& law) {
    const RankProfile rp = law_rank_profile(m, n, p, law);
    HilbertProfile out;
    out.values.reserve(rp.ranks.size());
    for (unsigned long r : rp.ranks) out.values.push_back(m * n - r);
    return out;
}

Multiplicities multiplicities_from_hilbert(const HilbertProfile& profile) {
    const auto& l = profile.values;
    if (l.size() == 1 && l[0] == 0) return Multiplicities{};
    if (l.empty() || l[0] != 0)
        throw std::invalid_argument("Hilbert profile must start at zero");
    for (size_t i = 0; i + 1 < l.size(); ++i)
        if (l[i] >= l[i + 1])
            throw std::invalid_argument("Hilbert profile is not strictly increasing");
    for (size_t i = 0; i + 2 < l.size(); ++i)
        if (l[i + 1] - l[i] < l[i + 2] - l[i + 1])
            throw std::invalid_argument("Hilbert profile has convex increments");
    Multiplicities out;
    const size_t t = l.size() - 1;
    for (size_t i = 1; i <= t; ++i) {
        const unsigned long next = i + 1 <= t ? l[i + 1] : l[t];
        out.add(i, 2 * l[i] - next - l[i - 1]);
    }
    return out;
}

// ---------------------------------------------------------------- products

Multiplicities char_zero_product(unsigned long m, unsigned long n) {
    if (m < 1 || n < 1) throw std::invalid_argument("basis indices must be positive");
    Multiplicities out;
    const unsigned long steps = std::min(m, n);
    for (unsigned long i = 0; i < steps; ++i) out.add(m + n - 1 - 2 * i, 1);
    return out;
}

Multiplicities product_multiplicities(unsigned long m, unsigned long n, const Characteristic& p) {
    if (m < 1 || n < 1) throw std::invalid_argument("basis indices must be positive");
    if (p.is_zero() || p.value() > m + n - 2) return char_zero_product(m, n);
    return multiplicities_from_ranks(graded_additive_profile(m, n, p));
}

Multiplicities product_multiplicities(unsigned long m, unsigned long n, const Characteristic& p,
                                      const GroupLaw& law) {
    return multiplicities_from_ranks(law_rank_profile(m, n, p, law));
}

unsigned long max_block_index(unsigned long m, unsigned long n, const Characteristic& p) {
    if (m < 1 || n < 1) throw std::invalid_argument("basis indices must be positive");
    if (p.is_zero()) return m + n - 1;
    const unsigned long pv = p.value();
    std::vector<unsigned long> pascal{1};
    for (unsigned long s = 1; s <= m + n - 2; ++s) {
        pascal.push_back(0);
        for (unsigned long k = s; k >= 1; --k) pascal[k] = (pascal[k] + pascal[k - 1]) % pv;
        const unsigned long jlo = s + 1 >= n ? s + 1 - n : 0;
        const unsigned long jhi = std::min(s, m - 1);
        bool all_zero = true;
        for (unsigned long j = jlo; j <= jhi; ++j)
            if (pascal[j] != 0) {
                all_zero = false;
                break;
            }
        if (all_zero) return s;
    }
    return m + n - 1;
}

Multiplicities unipotent_tensor_multiplicities(unsigned long m, unsigned long n,
                                               const Characteristic& p) {
    if (m < 1 || n < 1) throw std::invalid_argument("block sizes must be positive");
    if (p.is_zero())
        throw std::invalid_argument("unipotent tensor decomposition needs positive characteristic");
    SparseMatrix op;
    op.characteristic = p;
    op.dim = m * n;
    op.cols.resize(op.dim);
    // (J_m + 1) (x) (J_n + 1) - 1 sends e_a (x) e_b to
    // e_{a+1} (x) e_b + e_a (x) e_{b+1} + e_{a+1} (x) e_{b+1}, truncated
    for (unsigned long a = 0; a < m; ++a)
        for (unsigned long b = 0; b < n; ++b) {
            auto& col = op.cols[a * n + b];
            if (a + 1 < m) col.emplace_back((a + 1) * n + b, 1);
            if (b + 1 < n) col.emplace_back(a * n + (b + 1), 1);
            if (a + 1 < m && b + 1 < n) col.emplace_back((a + 1) * n + (b + 1), 1);
        }
    return multiplicities_from_ranks(rank_profile(op));
}

std::string check_product_identities(const Multiplicities& mult, unsigned long m,
                                     unsigned long n) {
    if (m < 1 || n < 1) return "basis indices must be positive";
    if (mult.block_count() != std::min(m, n))
        return "block count " + mult.block_count().get_str() + " differs from min(m, n) = " +
               std::to_string(std::min(m, n));
    if (mult.total_dimension() != mpz_class(m) * mpz_class(n))
        return "total dimension " + mult.total_dimension().get_str() + " differs from m n = " +
               std::to_string(m * n);
    if (mult.max_index() >= m + n)
        return "block index " + std::to_string(mult.max_index()) + " reaches m + n = " +
               std::to_string(m + n);
    return "";
}

} // namespace convring
