#include "polyformer/verify.hpp"

#include "polyformer/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace polyformer {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Matrix constant_matrix(int d, int n, double v) {
    Matrix m(d, n);
    for (auto& x : m.values) x = v;
    return m;
}

Matrix eval_on(const TransformerNetwork& net, const Matrix& x) {
    Matrix state = Matrix::zeros(net.state_dim, x.cols + 1);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) state.at(i, j) = x.at(i, j);
    return eval_transformer(net, state);
}

}  // namespace

Sampler make_default_sampler(int d, int n, std::uint64_t seed, int count) {
    if (d < 1 || n < 1 || count < 0)
        throw std::invalid_argument("make_default_sampler: bad dimensions");
    Sampler s;
    s.d = d;
    s.n = n;
    s.seed = seed;
    s.points.push_back(constant_matrix(d, n, 0.0));
    s.points.push_back(constant_matrix(d, n, 1.0));
    const int cells = d * n;
    if (cells <= 6) {
        long long total = 1;
        for (int i = 0; i < cells; ++i) total *= 3;
        for (long long c = 0; c < total; ++c) {
            Matrix m(d, n);
            long long rem = c;
            for (int i = 0; i < cells; ++i) {
                m.values[static_cast<size_t>(i)] = 0.5 * static_cast<double>(rem % 3);
                rem /= 3;
            }
            s.points.push_back(std::move(m));
        }
    }
    SplitMix64 rng(seed);
    for (int c = 0; c < count; ++c) {
        Matrix m(d, n);
        for (auto& x : m.values) x = rng.uniform01();
        s.points.push_back(std::move(m));
    }
    return s;
}

bool BoundReport::all_pass() const {
    for (const auto& c : claims)
        if (!c.pass) return false;
    return true;
}

ClaimRecord make_claim(std::string id, ClaimRecord::Kind kind, double measured, double bound) {
    ClaimRecord c;
    c.id = std::move(id);
    c.kind = kind;
    c.measured = measured;
    c.bound = bound;
    c.pass = kind == ClaimRecord::Kind::strict ? measured < bound * (1.0 + 1e-9)
                                               : measured <= bound;
    return c;
}

ErrorStats measure_error(const TransformerNetwork& net, const ReadOut& readout,
                         const Polynomial& f, const Sampler& s) {
    ErrorStats st;
    st.sample_count = static_cast<long long>(s.points.size());
    for (const auto& x : s.points) {
        if (x.rows != f.d || x.cols != f.n)
            throw std::invalid_argument("measure_error: sample dimensions do not match f");
        const Matrix out = eval_on(net, x);
        const double err = std::abs(eval_polynomial(f, x) - read_out(out, readout));
        if (err > st.max_abs_error) {
            st.max_abs_error = err;
            st.argmax_point = x;
        }
    }
    return st;
}

ErrorStats measure_tuple_row_error(const TransformerNetwork& net, const RowMap& rows,
                                   const RankTuple& t, const Sampler& s) {
    const int row = rows.row_of_tuple(t);
    ErrorStats st;
    st.sample_count = static_cast<long long>(s.points.size());
    for (const auto& x : s.points) {
        const Matrix out = eval_on(net, x);
        const double err = std::abs(eval_monomial_sym(t, x) - out.at(row, x.cols));
        if (err > st.max_abs_error) {
            st.max_abs_error = err;
            st.argmax_point = x;
        }
    }
    return st;
}

ErrorStats measure_bank_row_error(const FfnNetwork& net, const RowMap& rows,
                                  const MultiIndex& p, const Sampler& s) {
    const int row = rows.row_of_monomial(p);
    ErrorStats st;
    st.sample_count = static_cast<long long>(s.points.size());
    for (const auto& x : s.points) {
        Vector in(static_cast<size_t>(net.input_dim()), 0.0);
        for (int i = 0; i < s.d; ++i) in[static_cast<size_t>(i)] = x.at(i, 0);
        double truth = 1.0;
        for (int i = 0; i < p.dims(); ++i)
            for (int e = 0; e < p.e[static_cast<size_t>(i)]; ++e) truth *= x.at(i, 0);
        const Vector out = eval_ffn(net, in);
        const double err = std::abs(truth - out[static_cast<size_t>(row)]);
        if (err > st.max_abs_error) {
            st.max_abs_error = err;
            st.argmax_point = x;
        }
    }
    return st;
}

BoundReport check_bounds(const Polynomial& f, const BuildBudget& b, const Sampler& s) {
    return check_bounds(assemble_theorem1(f, b), f, s);
}

BoundReport check_bounds(const BuildResult& built, const Polynomial& f, const Sampler& s) {
    const BuildBudget& b = built.budget;
    const RowMap& rows = built.rows;
    const double f_ones = normalize_check(f);

    BoundReport rep;
    rep.budget = b;
    rep.actual = size_report(built.net);

    const auto monomials = enumerate_multi_indices(b.d, b.s);
    std::vector<double> mono_err(monomials.size(), 0.0);
    std::vector<double> tuple_err(rows.tuples.size(), 0.0);
    double end_err = 0.0;

    std::vector<Matrix> outputs;
    outputs.reserve(s.points.size());
    for (const auto& x : s.points) {
        const Matrix out = eval_on(built.net, x);
        for (size_t i = 0; i < monomials.size(); ++i) {
            const double truth = eval_monomial_sym(RankTuple{{monomials[i]}}, x);
            const double got = out.at(rows.row_of_monomial(monomials[i]), b.n);
            mono_err[i] = std::max(mono_err[i], std::abs(truth - got));
        }
        for (size_t i = 0; i < rows.tuples.size(); ++i) {
            const double truth = eval_monomial_sym(rows.tuples[i], x);
            const double got = out.at(rows.tuple_begin + static_cast<int>(i), b.n);
            tuple_err[i] = std::max(tuple_err[i], std::abs(truth - got));
        }
        end_err = std::max(
            end_err, std::abs(eval_polynomial(f, x) - read_out(out, built.readout)));
        outputs.push_back(out);
    }

    for (size_t i = 0; i < monomials.size(); ++i) {
        const int deg = monomials[i].degree();
        const std::string id = "rank1 m_" + monomials[i].to_string();
        if (deg == 1)
            rep.claims.push_back(make_claim(id + " exact", ClaimRecord::Kind::exact,
                                            mono_err[i], 1e-10));
        else
            rep.claims.push_back(make_claim(id, ClaimRecord::Kind::strict, mono_err[i],
                                            rank1_error_bound(b, deg)));
    }
    for (size_t i = 0; i < rows.tuples.size(); ++i)
        rep.claims.push_back(make_claim("tuple m_" + rows.tuples[i].to_string(),
                                        ClaimRecord::Kind::strict, tuple_err[i],
                                        tuple_error_bound(b, rows.tuples[i])));
    rep.claims.push_back(make_claim("end-to-end", ClaimRecord::Kind::strict, end_err,
                                    end_to_end_error_bound(b, f_ones)));

    // Readout invariance under column permutations, on a slice of the sample
    // set (the truth side is invariant by construction; this checks the
    // network side).
    {
        SplitMix64 rng(s.seed ^ 0x9e3779b97f4a7c15ULL);
        double perm_err = 0.0;
        const size_t probes = std::min<size_t>(s.points.size(), 24);
        for (size_t c = 0; c < probes; ++c) {
            const Matrix& x = s.points[c];
            const double base = read_out(outputs[c], built.readout);
            for (int rep_i = 0; rep_i < 3; ++rep_i) {
                std::vector<int> perm(static_cast<size_t>(b.n));
                for (int j = 0; j < b.n; ++j) perm[static_cast<size_t>(j)] = j;
                for (int j = b.n - 1; j > 0; --j)
                    std::swap(perm[static_cast<size_t>(j)],
                              perm[static_cast<size_t>(rng.next() % static_cast<std::uint64_t>(j + 1))]);
                Matrix px(x.rows, x.cols);
                for (int i = 0; i < x.rows; ++i)
                    for (int j = 0; j < x.cols; ++j)
                        px.at(i, j) = x.at(i, perm[static_cast<size_t>(j)]);
                const double got = read_out(eval_on(built.net, px), built.readout);
                perm_err = std::max(perm_err, std::abs(base - got));
            }
        }
        rep.claims.push_back(make_claim("permutation invariance", ClaimRecord::Kind::exact,
                                        perm_err, 1e-10));
    }

    rep.claims.push_back(make_claim("width", ClaimRecord::Kind::size,
                                    static_cast<double>(rep.actual.width),
                                    static_cast<double>(full_width_limit(b))));
    rep.claims.push_back(make_claim("depth", ClaimRecord::Kind::size,
                                    static_cast<double>(rep.actual.depth),
                                    static_cast<double>(full_depth_limit(b))));
    return rep;
}

void apply_fault(TransformerNetwork& net, double factor) {
    for (auto& blk : net.blocks)
        for (auto& v : blk.ff.w1.values)
            if (v != 0.0) {
                v *= factor;
                return;
            }
    throw std::logic_error("apply_fault: no nonzero feed-forward weight found");
}

std::string sweep(const Polynomial& f, const BuildBudget& base, const std::vector<int>& n_values,
                  const std::vector<int>& l_values, const Sampler& s) {
    std::string csv = "# schema: polyformer-sweep-1\n";
    csv += "N,L,max_error,bound,width,depth,params\n";
    for (int N : n_values)
        for (int L : l_values) {
            BuildBudget b = base;
            b.N = N;
            b.L = L;
            const BuildResult built = assemble_theorem1(f, b);
            const ErrorStats st = measure_error(built.net, built.readout, f, s);
            const SizeReport sr = size_report(built.net);
            csv += std::to_string(N) + "," + std::to_string(L) + "," +
                   fmt17(st.max_abs_error) + "," +
                   fmt17(end_to_end_error_bound(b, normalize_check(f))) + "," +
                   std::to_string(sr.width) + "," + std::to_string(sr.depth) + "," +
                   std::to_string(sr.parameter_count) + "\n";
        }
    return csv;
}

long long flat_ffn_equivalent_count(const BuildBudget& b) {
    const auto [bank, rows] = build_monomial_bank(b);
    const long long bank_params = size_report(bank).parameter_count;
    const long long B = rows.state_dim;
    const long long n = b.n;
    return n * bank_params + B * (n * B) + B;
}

std::string report_to_text(const BoundReport& r) {
    std::string out = "budget d=" + std::to_string(r.budget.d) + " n=" + std::to_string(r.budget.n) +
                      " s=" + std::to_string(r.budget.s) + " N=" + std::to_string(r.budget.N) +
                      " L=" + std::to_string(r.budget.L) + "\n";
    out += "size width=" + std::to_string(r.actual.width) +
           " depth=" + std::to_string(r.actual.depth) +
           " params=" + std::to_string(r.actual.parameter_count) + "\n";
    for (const auto& c : r.claims) {
        const char* rel = c.kind == ClaimRecord::Kind::strict ? "<" : "<=";
        out += std::string(c.pass ? "pass" : "FAIL") + "  " + c.id + ": " + fmt17(c.measured) +
               " " + rel + " " + fmt17(c.bound) + "\n";
    }
    out += r.all_pass() ? "ALL CLAIMS PASS\n" : "CLAIMS FAILED\n";
    return out;
}

}  // namespace polyformer
