#include "hfc/error.hpp"
#include "hfc/presentation.hpp"

#include <array>
#include <deque>
#include <numeric>

namespace hfc::pres {

Presentation::Presentation(int p_, std::vector<Word> extras) : p(p_), extra_relators(std::move(extras)) {
    if (p < 3) throw error(errc::invalid_presentation, "face order p must be >= 3");
    for (const auto& r : extra_relators) {
        if (r.empty()) throw error(errc::invalid_presentation, "empty extra relator");
        if (reduce(r).size() != r.size())
            throw error(errc::invalid_presentation, "extra relator not freely reduced: " + format_word(r));
    }
}

std::vector<Word> Presentation::base_relators() const {
    Word ra(2, letter(0, false));
    Word rb(3, letter(1, false));
    Word rg(p, letter(2, false));
    Word rabg = {letter(0, false), letter(1, false), letter(2, false)};
    return {ra, rb, rg, rabg};
}

std::vector<Word> Presentation::all_relators() const {
    auto rels = base_relators();
    rels.insert(rels.end(), extra_relators.begin(), extra_relators.end());
    return rels;
}

int PermutationRep::apply_letter(int flag, int l) const {
    switch (l) {
        case 0: return perm_alpha[flag];
        case 1: return perm_alpha[flag]; // alpha is an involution
        case 2: return perm_beta[flag];
        case 3: {
            // beta inverse = beta^2
            return perm_beta[perm_beta[flag]];
        }
        case 4: return perm_gamma[flag];
        default: {
            // gamma inverse: walk the cycle
            int x = flag, prev = flag;
            do {
                prev = x;
                x = perm_gamma[x];
            } while (x != flag);
            return prev;
        }
    }
}

int PermutationRep::apply_word(int flag, const Word& w) const {
    int x = flag;
    for (int l : w) x = apply_letter(x, l);
    return x;
}

namespace {

bool is_identity(const std::vector<int>& perm) {
    for (int i = 0; i < (int)perm.size(); ++i)
        if (perm[i] != i) return false;
    return true;
}

std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    // apply f first, then g
    std::vector<int> h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[i] = g[f[i]];
    return h;
}

std::vector<int> power(const std::vector<int>& f, int k) {
    std::vector<int> h(f.size());
    std::iota(h.begin(), h.end(), 0);
    for (int i = 0; i < k; ++i) h = compose(h, f);
    return h;
}

bool valid_permutation(const std::vector<int>& f, int n) {
    if ((int)f.size() != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : f) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

} // namespace

ValidationReport validate_rep(const PermutationRep& rep, int p) {
    ValidationReport report;
    int n = rep.flag_count;
    if (n <= 0) {
        report.violations.push_back("empty flag set");
        return report;
    }
    if (!valid_permutation(rep.perm_alpha, n)) report.violations.push_back("perm_alpha is not a permutation");
    if (!valid_permutation(rep.perm_beta, n)) report.violations.push_back("perm_beta is not a permutation");
    if (!valid_permutation(rep.perm_gamma, n)) report.violations.push_back("perm_gamma is not a permutation");
    if (!report.violations.empty()) return report;

    if (!is_identity(power(rep.perm_alpha, 2))) report.violations.push_back("alpha^2 != identity");
    if (!is_identity(power(rep.perm_beta, 3))) report.violations.push_back("beta^3 != identity");
    if (!is_identity(power(rep.perm_gamma, p))) report.violations.push_back("gamma^" + std::to_string(p) + " != identity");
    if (!is_identity(compose(compose(rep.perm_alpha, rep.perm_beta), rep.perm_gamma)))
        report.violations.push_back("alpha*beta*gamma != identity");

    // Transitivity: one orbit under all three generators.
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto* perm : {&rep.perm_alpha, &rep.perm_beta, &rep.perm_gamma}) {
            int y = (*perm)[x];
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
        }
    }
    report.transitive = (count == n);
    return report;
}

namespace {

// HLT-style coset enumerator over the 6-letter alphabet.
class Enumerator {
  public:
    Enumerator(const std::vector<Word>& relators, int max_cosets)
        : relators_(relators), max_cosets_(max_cosets) {
        add_coset();
    }

    void run() {
        for (size_t alpha = 0; alpha < table_.size(); ++alpha) {
            if (dead(alpha)) continue;
            for (const auto& rel : relators_) {
                scan_and_fill((int)alpha, rel);
                if (dead(alpha)) break;
            }
            if (dead(alpha)) continue;
            for (int x = 0; x < kNumLetters; ++x) {
                if (table_[alpha][x] < 0) {
                    int nu = add_coset();
                    set_entry((int)alpha, x, nu);
                }
            }
        }
    }

    // Canonical renumbering: BFS from coset 0 in letter order.
    PermutationRep extract() const {
        std::vector<int> live;
        std::vector<int> index(table_.size(), -1);
        // collect live cosets
        for (size_t i = 0; i < table_.size(); ++i)
            if (!dead(i)) live.push_back((int)i);
        // BFS order
        std::vector<int> order;
        order.reserve(live.size());
        std::deque<int> q;
        q.push_back(rep_of(0));
        index[rep_of(0)] = 0;
        order.push_back(rep_of(0));
        while (!q.empty()) {
            int c = q.front();
            q.pop_front();
            for (int x = 0; x < kNumLetters; ++x) {
                int d = rep_of(table_[c][x]);
                if (index[d] < 0) {
                    index[d] = (int)order.size();
                    order.push_back(d);
                    q.push_back(d);
                }
            }
        }
        int n = (int)order.size();
        PermutationRep out;
        out.flag_count = n;
        out.perm_alpha.resize(n);
        out.perm_beta.resize(n);
        out.perm_gamma.resize(n);
        for (int i = 0; i < n; ++i) {
            int c = order[i];
            out.perm_alpha[i] = index[rep_of(table_[c][0])];
            out.perm_beta[i] = index[rep_of(table_[c][2])];
            out.perm_gamma[i] = index[rep_of(table_[c][4])];
        }
        return out;
    }

    int live_count() const { return live_count_; }

  private:
    bool dead(size_t c) const { return parent_[c] != (int)c; }

    int rep_of(int c) const {
        while (parent_[c] != c) c = parent_[c];
        return c;
    }

    int rep_compress(int c) {
        int r = rep_of(c);
        while (parent_[c] != r) {
            int next = parent_[c];
            parent_[c] = r;
            c = next;
        }
        return r;
    }

    int add_coset() {
        if (live_count_ >= max_cosets_)
            throw error(errc::enumeration_overflow,
                        "coset count exceeds max_cosets=" + std::to_string(max_cosets_) +
                            " (the quotient group may be infinite)");
        table_.push_back({-1, -1, -1, -1, -1, -1});
        parent_.push_back((int)table_.size() - 1);
        ++live_count_;
        return (int)table_.size() - 1;
    }

    void set_entry(int c, int x, int d) {
        table_[c][x] = d;
        table_[d][letter_inverse(x)] = c;
    }

    void merge(int a, int b, std::deque<int>& q) {
        a = rep_compress(a);
        b = rep_compress(b);
        if (a == b) return;
        int mu = std::min(a, b), nu = std::max(a, b);
        parent_[nu] = mu;
        --live_count_;
        q.push_back(nu);
    }

    void coincidence(int a, int b) {
        std::deque<int> q;
        merge(a, b, q);
        while (!q.empty()) {
            int e = q.front();
            q.pop_front();
            for (int x = 0; x < kNumLetters; ++x) {
                int f = table_[e][x];
                if (f < 0) continue;
                table_[f][letter_inverse(x)] = -1;
                table_[e][x] = -1;
                int mu = rep_compress(e), nu = rep_compress(f);
                if (table_[mu][x] >= 0)
                    merge(nu, table_[mu][x], q);
                else if (table_[nu][letter_inverse(x)] >= 0)
                    merge(mu, table_[nu][letter_inverse(x)], q);
                else
                    set_entry(mu, x, nu);
            }
        }
    }

    void scan_and_fill(int alpha, const Word& w) {
        int f = alpha, b = alpha;
        int i = 0, j = (int)w.size() - 1;
        for (;;) {
            while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && table_[b][letter_inverse(w[j])] >= 0) b = table_[b][letter_inverse(w[j--])];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                set_entry(f, w[i], b);
                return;
            }
            int nu = add_coset();
            set_entry(f, w[i], nu);
            f = nu;
            ++i;
        }
    }

    std::vector<Word> relators_;
    int max_cosets_;
    std::vector<std::array<int, kNumLetters>> table_;
    std::vector<int> parent_;
    int live_count_ = 0;
};

} // namespace

PermutationRep todd_coxeter(const Presentation& pres, int max_cosets) {
    if (max_cosets <= 0) throw error(errc::invalid_presentation, "max_cosets must be positive");
    Enumerator en(pres.all_relators(), max_cosets);
    en.run();
    return en.extract();
}

} // namespace hfc::pres
