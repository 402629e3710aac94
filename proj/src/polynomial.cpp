#include "polyformer/polynomial.hpp"

#include "polyformer/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polyformer {

namespace {

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

int Term::total_degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

int Polynomial::degree() const {
    int s = 0;
    for (const auto& t : terms) s = std::max(s, t.total_degree());
    return s;
}

int& Polynomial::exponent(Term& t, int i, int j) const { return t.exponents[static_cast<size_t>(j * d + i)]; }
int Polynomial::exponent(const Term& t, int i, int j) const { return t.exponents[static_cast<size_t>(j * d + i)]; }

Polynomial make_polynomial(int d, int n, std::vector<Term> terms) {
    if (d < 1 || n < 1) throw std::invalid_argument("make_polynomial: d,n must be positive");
    for (const auto& t : terms) {
        if (static_cast<int>(t.exponents.size()) != d * n)
            throw std::invalid_argument("make_polynomial: exponent vector has wrong size");
        for (int e : t.exponents)
            if (e < 0) throw std::invalid_argument("make_polynomial: negative exponent");
    }
    // Leading (lexicographically largest in the column-major order) first.
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return b.exponents < a.exponents; });
    std::vector<Term> merged;
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().exponents == t.exponents)
            merged.back().coeff = merged.back().coeff + t.coeff;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff.is_zero(); }),
                 merged.end());
    Polynomial f;
    f.d = d;
    f.n = n;
    f.terms = std::move(merged);
    return f;
}

Polynomial add(const Polynomial& a, const Polynomial& b) {
    if (a.d != b.d || a.n != b.n) throw std::invalid_argument("add: dimension mismatch");
    std::vector<Term> terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    return make_polynomial(a.d, a.n, std::move(terms));
}

Polynomial scale(const Polynomial& f, const Rational& c) {
    std::vector<Term> terms = f.terms;
    for (auto& t : terms) t.coeff = t.coeff * c;
    return make_polynomial(f.d, f.n, std::move(terms));
}

Polynomial permute_columns(const Polynomial& f, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != f.n) throw std::invalid_argument("permute_columns: bad permutation size");
    std::vector<Term> terms;
    terms.reserve(f.terms.size());
    for (const auto& t : f.terms) {
        Term nt;
        nt.coeff = t.coeff;
        nt.exponents.assign(static_cast<size_t>(f.d * f.n), 0);
        for (int j = 0; j < f.n; ++j)
            for (int i = 0; i < f.d; ++i)
                nt.exponents[static_cast<size_t>(j * f.d + i)] =
                    t.exponents[static_cast<size_t>(perm[static_cast<size_t>(j)] * f.d + i)];
        terms.push_back(std::move(nt));
    }
    return make_polynomial(f.d, f.n, std::move(terms));
}

double eval_polynomial(const Polynomial& f, const Matrix& x) {
    if (x.rows != f.d || x.cols != f.n) throw std::invalid_argument("eval_polynomial: dimension mismatch");
    double acc = 0.0;
    for (const auto& t : f.terms) {
        double prod = t.coeff.to_double();
        for (int j = 0; j < f.n; ++j)
            for (int i = 0; i < f.d; ++i) {
                const int e = f.exponent(t, i, j);
                if (e) prod *= ipow(x.at(i, j), e);
            }
        acc += prod;
    }
    return acc;
}

Rational sum_coefficients(const Polynomial& f) {
    Rational s;
    for (const auto& t : f.terms) s = s + t.coeff;
    return s;
}

namespace {

// Per-part, per-column monomial values val[i][j] = x_j^{p_i}.
std::vector<std::vector<double>> part_column_values(const RankTuple& t, const Matrix& x) {
    std::vector<std::vector<double>> val(static_cast<size_t>(t.rank()),
                                         std::vector<double>(static_cast<size_t>(x.cols), 1.0));
    for (int i = 0; i < t.rank(); ++i) {
        const auto& p = t.parts[static_cast<size_t>(i)];
        if (p.dims() != x.rows) throw std::invalid_argument("monomial part dimension mismatch");
        for (int j = 0; j < x.cols; ++j) {
            double v = 1.0;
            for (int row = 0; row < x.rows; ++row) v *= ipow(x.at(row, j), p.e[static_cast<size_t>(row)]);
            val[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        }
    }
    return val;
}

double injective_sum(const std::vector<std::vector<double>>& val, int n, int depth,
                     std::uint64_t used, double prefix) {
    if (depth == static_cast<int>(val.size())) return prefix;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        if (used & (1ULL << j)) continue;
        acc += injective_sum(val, n, depth + 1, used | (1ULL << j),
                             prefix * val[static_cast<size_t>(depth)][static_cast<size_t>(j)]);
    }
    return acc;
}

}  // namespace

double eval_monomial_sym(const RankTuple& t, const Matrix& x) {
    const int n = x.cols;
    if (t.rank() == 0) return 1.0;
    if (t.rank() > n) return 0.0;
    if (n > 63) throw std::invalid_argument("eval_monomial_sym: too many columns");
    const auto val = part_column_values(t, x);
    return injective_sum(val, n, 0, 0, 1.0);
}

double eval_monomial_sym_permsum(const RankTuple& t, const Matrix& x) {
    const int n = x.cols;
    if (n > 8) throw std::invalid_argument("eval_monomial_sym_permsum: n must be <= 8");
    const int r = t.rank();
    if (r > n) return 0.0;
    if (r == 0) return 1.0;
    const auto val = part_column_values(t, x);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double acc = 0.0;
    do {
        double prod = 1.0;
        for (int i = 0; i < r; ++i) prod *= val[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])];
        acc += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / static_cast<double>(checked_factorial(n - r));
}

namespace {

void expand_rec(const RankTuple& t, int d, int n, int depth, std::uint64_t used,
                std::vector<int>& cols, std::vector<Term>& out) {
    if (depth == t.rank()) {
        Term term;
        term.coeff = Rational(1);
        term.exponents.assign(static_cast<size_t>(d * n), 0);
        for (int i = 0; i < t.rank(); ++i) {
            const auto& p = t.parts[static_cast<size_t>(i)];
            for (int row = 0; row < d; ++row)
                term.exponents[static_cast<size_t>(cols[static_cast<size_t>(i)] * d + row)] += p.e[static_cast<size_t>(row)];
        }
        out.push_back(std::move(term));
        return;
    }
    for (int j = 0; j < n; ++j) {
        if (used & (1ULL << j)) continue;
        cols[static_cast<size_t>(depth)] = j;
        expand_rec(t, d, n, depth + 1, used | (1ULL << j), cols, out);
    }
}

}  // namespace

Polynomial expand_monomial_sym(const RankTuple& t, int n) {
    if (t.rank() == 0) throw std::invalid_argument("expand_monomial_sym: empty tuple");
    const int d = t.parts.front().dims();
    if (t.rank() > n) return make_polynomial(d, n, {});
    std::vector<Term> terms;
    std::vector<int> cols(static_cast<size_t>(t.rank()), 0);
    expand_rec(t, d, n, 0, 0, cols, terms);
    return make_polynomial(d, n, std::move(terms));
}

namespace {

bool same_terms(const Polynomial& a, const Polynomial& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].coeff != b.terms[i].coeff || a.terms[i].exponents != b.terms[i].exponents)
            return false;
    return true;
}

}  // namespace

std::optional<int> asymmetry_witness(const Polynomial& f) {
    for (int j = 0; j + 1 < f.n; ++j) {
        std::vector<int> perm(static_cast<size_t>(f.n));
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[static_cast<size_t>(j)], perm[static_cast<size_t>(j + 1)]);
        if (!same_terms(f, permute_columns(f, perm))) return j;
    }
    return std::nullopt;
}

bool is_column_symmetric(const Polynomial& f) { return !asymmetry_witness(f).has_value(); }

Decomposition decompose(const Polynomial& f) {
    if (auto w = asymmetry_witness(f)) {
        throw std::invalid_argument("decompose: polynomial is not column-symmetric (columns " +
                                    std::to_string(*w + 1) + "," + std::to_string(*w + 2) +
                                    " transposition changes it)");
    }
    Decomposition dec;
    std::map<RankTuple, Rational> found;
    Polynomial g = f;
    while (!g.terms.empty()) {
        const Term lead = g.terms.front();
        std::vector<MultiIndex> parts;
        for (int j = 0; j < g.n; ++j) {
            MultiIndex p;
            p.e.resize(static_cast<size_t>(g.d));
            for (int i = 0; i < g.d; ++i) p.e[static_cast<size_t>(i)] = g.exponent(lead, i, j);
            if (!p.is_zero()) parts.push_back(std::move(p));
        }
        if (parts.empty()) {
            dec.constant = dec.constant + lead.coeff;
            g.terms.erase(g.terms.begin());
            continue;
        }
        const RankTuple t = canonical_tuple(std::move(parts));
        const Rational c = lead.coeff / Rational(symmetry_coefficient(t, g.n));
        found[t] = found[t] + c;
        g = add(g, scale(expand_monomial_sym(t, g.n), -c));
        if (!g.terms.empty() && !(g.terms.front().exponents < lead.exponents))
            throw std::logic_error("decompose: leading term failed to decrease");
    }
    for (auto& kv : found)
        if (!kv.second.is_zero()) dec.components.emplace_back(kv.second, kv.first);
    return dec;
}

Polynomial recompose(const Decomposition& dec, int d, int n) {
    Polynomial acc = make_polynomial(d, n, {});
    if (!dec.constant.is_zero()) {
        Term c;
        c.coeff = dec.constant;
        c.exponents.assign(static_cast<size_t>(d * n), 0);
        acc = make_polynomial(d, n, {c});
    }
    for (const auto& [c, t] : dec.components)
        acc = add(acc, scale(expand_monomial_sym(t, n), c));
    return acc;
}

double lemma6_residual(const RankTuple& t, const MultiIndex& q, const Matrix& x) {
    if (q.is_zero()) throw std::invalid_argument("lemma6_residual: extra part must be nonzero");
    const double lhs = eval_monomial_sym(t, x) * eval_monomial_sym(RankTuple{{q}}, x);

    auto appended = t.parts;
    appended.push_back(q);
    double rhs = eval_monomial_sym(canonical_tuple(std::move(appended)), x);
    for (int i = 0; i < t.rank(); ++i) {
        auto merged = t.parts;
        for (int row = 0; row < q.dims(); ++row)
            merged[static_cast<size_t>(i)].e[static_cast<size_t>(row)] += q.e[static_cast<size_t>(row)];
        rhs += eval_monomial_sym(canonical_tuple(std::move(merged)), x);
    }
    return lhs - rhs;
}

double normalize_check(const Polynomial& f) {
    if (f.terms.empty()) throw std::invalid_argument("normalize_check: zero polynomial");
    for (const auto& t : f.terms)
        if (t.coeff.num <= 0) throw std::invalid_argument("normalize_check: non-positive coefficient");
    return sum_coefficients(f).to_double();
}

Polynomial random_symmetric_polynomial(int d, int n, int s, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const auto tuples = enumerate_rank_tuples(d, s);
    std::vector<size_t> full_degree;
    for (size_t i = 0; i < tuples.size(); ++i)
        if (tuples[i].degree() == s && tuples[i].rank() <= n) full_degree.push_back(i);
    if (full_degree.empty())
        throw std::invalid_argument("random_symmetric_polynomial: no degree-s tuple fits n columns");
    const size_t forced = full_degree[static_cast<size_t>(rng.next() % full_degree.size())];

    auto dyadic = [&rng]() { return Rational(1 + static_cast<std::int64_t>(rng.next() % 1024), 1024); };

    Decomposition dec;
    for (size_t i = 0; i < tuples.size(); ++i) {
        if (tuples[i].rank() > n) continue;
        if (i != forced && (rng.next() & 3) != 0) continue;  // keep roughly a quarter
        dec.components.emplace_back(dyadic(), tuples[i]);
    }
    if (rng.next() & 1) dec.constant = dyadic();

    Rational total = dec.constant;
    for (const auto& [c, t] : dec.components)
        total = total + c * Rational(falling_factorial(n, t.rank()));
    dec.constant = dec.constant / total;
    for (auto& [c, t] : dec.components) c = c / total;
    return recompose(dec, d, n);
}

std::string polynomial_to_text(const Polynomial& f) {
    std::string out;
    for (const auto& t : f.terms) {
        out += t.coeff.to_string();
        for (int i = 0; i < f.d; ++i)
            for (int j = 0; j < f.n; ++j) {
                const int e = f.exponent(t, i, j);
                if (!e) continue;
                out += " * x[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
                if (e != 1) out += "^" + std::to_string(e);
            }
        out += "\n";
    }
    return out;
}

namespace {

Rational parse_coefficient(const std::string& tok) {
    std::string s = tok;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw std::invalid_argument("polynomial text: empty coefficient");
    bool neg = false;
    size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        pos = 1;
    }
    auto digits = [&](std::int64_t& out_value) {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw std::invalid_argument("polynomial text: bad coefficient '" + tok + "'");
        out_value = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            out_value = checked_add(checked_mul(out_value, 10), s[pos] - '0');
            ++pos;
        }
    };
    std::int64_t whole = 0;
    if (pos < s.size() && s[pos] == '.') {
        // forms like ".5"
    } else {
        digits(whole);
    }
    Rational r(whole);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::int64_t den = 0;
        digits(den);
        r = Rational(whole, den);
    } else if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::int64_t frac = 0;
        std::int64_t scale = 1;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw std::invalid_argument("polynomial text: bad coefficient '" + tok + "'");
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            frac = checked_add(checked_mul(frac, 10), s[pos] - '0');
            scale = checked_mul(scale, 10);
            ++pos;
        }
        r = Rational(whole) + Rational(frac, scale);
    }
    if (pos != s.size()) throw std::invalid_argument("polynomial text: bad coefficient '" + tok + "'");
    return neg ? -r : r;
}

}  // namespace

Polynomial polynomial_from_text(const std::string& text, int d, int n) {
    std::vector<Term> terms;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = std::all_of(line.begin(), line.end(),
                                 [](unsigned char c) { return std::isspace(c); });
        if (blank) continue;

        std::vector<std::string> factors;
        std::string cur;
        for (char c : line) {
            if (c == '*') {
                factors.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        factors.push_back(cur);

        Term term;
        term.coeff = parse_coefficient(factors.front());
        term.exponents.assign(static_cast<size_t>(d * n), 0);
        for (size_t fi = 1; fi < factors.size(); ++fi) {
            std::string s = factors[fi];
            s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
            int i = 0, j = 0, e = 1;
            int consumed = 0;
            const int got = std::sscanf(s.c_str(), "x[%d][%d]%n", &i, &j, &consumed);
            if (got != 2) throw std::invalid_argument("polynomial text: bad factor '" + factors[fi] + "'");
            size_t off = static_cast<size_t>(consumed);
            if (off < s.size()) {
                int adv = 0;
                if (std::sscanf(s.c_str() + off, "^%d%n", &e, &adv) != 1 || e < 1)
                    throw std::invalid_argument("polynomial text: bad factor '" + factors[fi] + "'");
                off += static_cast<size_t>(adv);
            }
            if (off != s.size())
                throw std::invalid_argument("polynomial text: bad factor '" + factors[fi] + "'");
            if (i < 1 || i > d || j < 1 || j > n)
                throw std::invalid_argument("polynomial text: variable index out of range in '" + factors[fi] + "'");
            term.exponents[static_cast<size_t>((j - 1) * d + (i - 1))] += e;
        }
        terms.push_back(std::move(term));
    }
    return make_polynomial(d, n, std::move(terms));
}

}  // namespace polyformer
