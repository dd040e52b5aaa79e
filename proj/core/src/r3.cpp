#include "ap3/r3.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace ap3 {

void IntSet::validate() const {
    std::int64_t prev = 0;
    for (auto m : members) {
        if (m <= prev || m > n) throw Error("IntSet members must be strictly increasing in [1,N]");
        prev = m;
    }
}

bool is_ap_free(const IntSet& s) {
    std::vector<std::uint8_t> in(static_cast<std::size_t>(s.n + 1), 0);
    for (auto m : s.members) in[static_cast<std::size_t>(m)] = 1;
    const auto& e = s.members;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const std::int64_t sum = e[i] + e[j];
            if (sum % 2 == 0 && in[static_cast<std::size_t>(sum / 2)]) return false;
        }
    }
    return true;
}

namespace {

struct BnB {
    std::int64_t n;
    std::int64_t budget;
    std::vector<std::int64_t> banned;  // #pairs (u,v) in cur with 2v - u = w
    std::vector<std::int64_t> cur;
    std::vector<std::int64_t> best;
    std::int64_t nodes = 0;
    bool exhausted = false;
    bool prune = true;

    explicit BnB(std::int64_t nn, std::int64_t b, bool do_prune)
        : n(nn), budget(b), banned(static_cast<std::size_t>(2 * nn + 2), 0), prune(do_prune) {}

    void add(std::int64_t v) {
        // Elements arrive in increasing order, so a new AP can only have v as
        // its largest point; ban the extensions 2v - u.
        for (auto u : cur) ++banned[static_cast<std::size_t>(2 * v - u)];
        cur.push_back(v);
    }
    void remove(std::int64_t v) {
        cur.pop_back();
        for (auto u : cur) --banned[static_cast<std::size_t>(2 * v - u)];
    }

    void dfs(std::int64_t next) {
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        if (static_cast<std::int64_t>(cur.size()) > static_cast<std::int64_t>(best.size()))
            best = cur;
        if (next > n) return;
        if (prune &&
            static_cast<std::int64_t>(cur.size()) + (n - next + 1) <=
                static_cast<std::int64_t>(best.size()))
            return;
        if (banned[static_cast<std::size_t>(next)] == 0) {
            add(next);
            dfs(next + 1);
            remove(next);
            if (exhausted) return;
        }
        dfs(next + 1);
    }
};

R3Certificate run_search(std::int64_t n, std::int64_t budget, bool prune, R3Method method) {
    if (n < 1) throw Error("N must be >= 1");
    BnB search(n, budget, prune);
    search.dfs(1);
    R3Certificate cert;
    cert.n = n;
    cert.value = static_cast<std::int64_t>(search.best.size());
    cert.witness.n = n;
    cert.witness.members = search.best;
    cert.method = method;
    cert.certified = !search.exhausted;
    cert.nodes = search.nodes;
    return cert;
}

}  // namespace

R3Certificate r3_exact(std::int64_t n, std::int64_t budget) {
    return run_search(n, budget, true, R3Method::branch_and_bound);
}

R3Certificate r3_exhaustive(std::int64_t n) {
    if (n < 1) throw Error("N must be >= 1");
    if (n > 22) throw Error("exhaustive route limited to N <= 22");
    // Literal sweep of all 2^N subsets against the precomputed violating triples.
    std::vector<std::uint64_t> triples;
    for (std::int64_t x = 1; x <= n; ++x)
        for (std::int64_t y = x + 2; y <= n; y += 2)
            triples.push_back((1ULL << (x - 1)) | (1ULL << ((x + y) / 2 - 1)) |
                              (1ULL << (y - 1)));
    std::uint64_t best_mask = 0;
    int best_count = 0;
    const std::uint64_t limit = 1ULL << n;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        if (std::popcount(mask) <= best_count) continue;
        bool free_of_aps = true;
        for (auto t : triples)
            if ((mask & t) == t) { free_of_aps = false; break; }
        if (free_of_aps) {
            best_mask = mask;
            best_count = std::popcount(mask);
        }
    }
    R3Certificate cert;
    cert.n = n;
    cert.value = best_count;
    cert.witness.n = n;
    for (std::int64_t i = 0; i < n; ++i)
        if (best_mask & (1ULL << i)) cert.witness.members.push_back(i + 1);
    cert.method = R3Method::exhaustive;
    cert.certified = true;
    cert.nodes = static_cast<std::int64_t>(limit);
    return cert;
}

BehrendResult behrend_construct(std::int64_t n) {
    if (n < 8) throw RangeTooSmall(n);

    BehrendResult best;
    for (std::int64_t q = 3; q <= 12; ++q) {
        const std::int64_t dmax = (q + 1) / 2;  // digits d with d < q/2, i.e. 0..dmax-1
        for (std::int64_t k = 2; k <= 6; ++k) {
            std::int64_t qk = 1;
            bool fits = true;
            for (std::int64_t i = 0; i < k; ++i) {
                qk *= q;
                if (qk > n) { fits = false; break; }
            }
            if (!fits) continue;

            // Bucket digit vectors by squared norm; digits in [0, dmax).
            const std::int64_t max_r2 = k * (dmax - 1) * (dmax - 1);
            std::vector<std::vector<std::int64_t>> spheres(static_cast<std::size_t>(max_r2 + 1));
            std::vector<std::int64_t> digits(static_cast<std::size_t>(k), 0);
            for (;;) {
                std::int64_t value = 0, r2 = 0;
                for (std::int64_t i = k - 1; i >= 0; --i) {
                    value = value * q + digits[static_cast<std::size_t>(i)];
                    r2 += digits[static_cast<std::size_t>(i)] * digits[static_cast<std::size_t>(i)];
                }
                spheres[static_cast<std::size_t>(r2)].push_back(value + 1);  // shift into [1, N]
                std::int64_t i = 0;
                while (i < k && ++digits[static_cast<std::size_t>(i)] == dmax) {
                    digits[static_cast<std::size_t>(i)] = 0;
                    ++i;
                }
                if (i == k) break;
            }
            std::int64_t arg = 0;
            for (std::int64_t r2 = 0; r2 <= max_r2; ++r2)
                if (spheres[static_cast<std::size_t>(r2)].size() >
                    spheres[static_cast<std::size_t>(arg)].size())
                    arg = r2;
            if (static_cast<std::int64_t>(spheres[static_cast<std::size_t>(arg)].size()) >
                best.core_size) {
                best.core_size = static_cast<std::int64_t>(spheres[static_cast<std::size_t>(arg)].size());
                best.q = q;
                best.k = k;
                best.radius2 = arg;
                best.set.members = spheres[static_cast<std::size_t>(arg)];
            }
        }
    }
    best.set.n = n;
    std::sort(best.set.members.begin(), best.set.members.end());

    // Sphere classes are thin at small N; complete greedily, which keeps
    // AP-freeness by construction and never exceeds r3.
    std::vector<std::uint8_t> in(static_cast<std::size_t>(n + 1), 0);
    for (auto m : best.set.members) in[static_cast<std::size_t>(m)] = 1;
    for (std::int64_t c = 1; c <= n; ++c) {
        if (in[static_cast<std::size_t>(c)]) continue;
        bool ok = true;
        for (auto s : best.set.members) {
            const std::int64_t ext = 2 * s - c;     // {c, s, 2s-c}
            const std::int64_t mid2 = c + s;        // {c, (c+s)/2, s}
            const std::int64_t far = 2 * c - s;     // {s, c, 2c-s}
            if ((ext >= 1 && ext <= n && in[static_cast<std::size_t>(ext)]) ||
                (mid2 % 2 == 0 && in[static_cast<std::size_t>(mid2 / 2)]) ||
                (far >= 1 && far <= n && in[static_cast<std::size_t>(far)])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            in[static_cast<std::size_t>(c)] = 1;
            best.set.members.insert(
                std::lower_bound(best.set.members.begin(), best.set.members.end(), c), c);
        }
    }

    if (!is_ap_free(best.set)) throw Error("construction produced a set with a progression");
    return best;
}

const char* to_string(R3Method m) {
    return m == R3Method::exhaustive ? "exhaustive" : "branch_and_bound";
}

}  // namespace ap3
