#include "polyformer/builder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace polyformer {

void BuildBudget::validate() const {
    if (d < 1 || n < 1 || s < 1)
        throw std::invalid_argument("BuildBudget: d, n, s must be positive");
    (void)gadget().k();  // validates N >= 2 and L >= 1
}

int RowMap::row_of_input(int i) const {
    if (i < 0 || i >= d) throw std::out_of_range("RowMap: input index out of range");
    return i;
}

int RowMap::row_of_monomial(const MultiIndex& p) const {
    if (p.degree() == 1) {
        for (int i = 0; i < d; ++i)
            if (p.e[static_cast<size_t>(i)] == 1) return i;
    }
    for (size_t k = 0; k < bank.size(); ++k)
        if (bank[k] == p) return bank_begin + static_cast<int>(k);
    throw std::out_of_range("RowMap: unknown monomial " + p.to_string());
}

int RowMap::row_of_tuple(const RankTuple& t) const {
    if (t.rank() == 1) return row_of_monomial(t.parts.front());
    for (size_t k = 0; k < tuples.size(); ++k)
        if (tuples[k] == t) return tuple_begin + static_cast<int>(k);
    throw std::out_of_range("RowMap: unknown tuple " + t.to_string());
}

namespace {

RowMap make_layout(const BuildBudget& b, bool with_tuples, bool with_readout) {
    RowMap rows;
    rows.d = b.d;
    rows.n = b.n;
    rows.s = b.s;
    for (const auto& p : enumerate_multi_indices(b.d, b.s))
        if (p.degree() >= 2) rows.bank.push_back(p);
    rows.bank_begin = b.d;
    rows.tuple_begin = rows.bank_begin + static_cast<int>(rows.bank.size());
    int next = rows.tuple_begin;
    if (with_tuples) {
        for (const auto& t : enumerate_rank_tuples(b.d, b.s))
            if (t.rank() >= 2) rows.tuples.push_back(t);
        next += static_cast<int>(rows.tuples.size());
    }
    if (with_readout) rows.readout_row = next++;

    // Scratch sized for the busiest stage: one gadget per degree-j monomial
    // (bank stages) or per rank-r tuple (recursion stages), 6 rows each.
    int gadgets = 0;
    for (int j = 2; j <= b.s; ++j) {
        int c = 0;
        for (const auto& p : rows.bank)
            if (p.degree() == j) ++c;
        gadgets = std::max(gadgets, c);
    }
    for (int r = 2; r <= b.s; ++r) {
        int c = 0;
        for (const auto& t : rows.tuples)
            if (t.rank() == r) ++c;
        gadgets = std::max(gadgets, c);
    }
    rows.scratch_begin = next;
    rows.scratch_rows = 6 * gadgets;
    rows.state_dim = next + rows.scratch_rows;
    return rows;
}

// Sparse accumulator for one block's feed-forward parameters. All writes are
// additive so repeated (row, unit) contributions merge.
struct BlockSketch {
    struct Entry {
        int r, c;
        double v;
    };
    int units = 0;
    std::vector<Entry> w1, w2;
    std::vector<std::pair<int, double>> b1;

    int unit() { return units++; }
    void in(int u, int row, double v) { w1.push_back({u, row, v}); }
    void bias(int u, double v) { b1.emplace_back(u, v); }
    void out(int row, int u, double v) { w2.push_back({row, u, v}); }
};

TransformerBlock seal(BlockSketch sk, int dim, AttentionParams attn) {
    const int m = std::max(sk.units, 1);
    TransformerBlock blk;
    blk.attn = std::move(attn);
    blk.ff.w1 = Matrix::zeros(m, dim);
    blk.ff.b1 = Vector(static_cast<size_t>(m), 0.0);
    blk.ff.w2 = Matrix::zeros(dim, m);
    blk.ff.b2 = Vector(static_cast<size_t>(dim), 0.0);
    for (const auto& e : sk.w1) blk.ff.w1.at(e.r, e.c) += e.v;
    for (const auto& [u, v] : sk.b1) blk.ff.b1[static_cast<size_t>(u)] += v;
    for (const auto& e : sk.w2) blk.ff.w2.at(e.r, e.c) += e.v;
    return blk;
}

struct SawtoothPlan {
    int k;
    int U;
    std::vector<std::vector<double>> coeff;

    explicit SawtoothPlan(const GadgetBudget& g)
        : k(g.k()), U(1 << g.k()), coeff(sawtooth_unit_coefficients(g.k())) {}

    double drop(int round, int m) const { return accumulator_drop_weight(k, round, m); }
    double tent(int m) const { return coeff[static_cast<size_t>(k - 1)][static_cast<size_t>(m)]; }
    double breakpoint(int m) const { return std::ldexp(static_cast<double>(m), -k); }
};

// One in-flight product gadget: three squaring channels whose running state
// (accumulator a, argument t) lives in six scratch rows carried by the
// residual stream between blocks.
struct GadgetPlan {
    std::array<std::vector<std::pair<int, double>>, 3> combo;  // channel input reads
    int scratch = 0;
    int dest = 0;
    double out_scale = 1.0;

    int a_row(int c) const { return scratch + 2 * c; }
    int t_row(int c) const { return scratch + 2 * c + 1; }
};

// Round 1 reads the channel inputs directly: the breakpoint units double as
// the initialization (u_0 equals t_0 for nonnegative inputs).
void gadget_first_round(BlockSketch& sk, const SawtoothPlan& sp, const GadgetPlan& g) {
    for (int c = 0; c < 3; ++c) {
        std::vector<int> u(static_cast<size_t>(sp.U));
        for (int m = 0; m < sp.U; ++m) {
            const int um = sk.unit();
            u[static_cast<size_t>(m)] = um;
            for (const auto& [row, w] : g.combo[static_cast<size_t>(c)]) sk.in(um, row, w);
            sk.bias(um, -sp.breakpoint(m));
        }
        sk.out(g.a_row(c), u[0], 1.0);
        for (int m = 0; m < sp.U; ++m) {
            sk.out(g.a_row(c), u[static_cast<size_t>(m)], -sp.drop(1, m));
            sk.out(g.t_row(c), u[static_cast<size_t>(m)], sp.tent(m));
        }
    }
}

void gadget_round(BlockSketch& sk, const SawtoothPlan& sp, const GadgetPlan& g, int round) {
    for (int c = 0; c < 3; ++c) {
        std::vector<int> u(static_cast<size_t>(sp.U));
        for (int m = 0; m < sp.U; ++m) {
            const int um = sk.unit();
            u[static_cast<size_t>(m)] = um;
            sk.in(um, g.t_row(c), 1.0);
            sk.bias(um, -sp.breakpoint(m));
        }
        // t := T_k(t); the old value (= u_0 while t >= 0) is cancelled out of
        // the residual, the accumulator is updated in place.
        sk.out(g.t_row(c), u[0], -1.0);
        for (int m = 0; m < sp.U; ++m) {
            sk.out(g.a_row(c), u[static_cast<size_t>(m)], -sp.drop(round, m));
            sk.out(g.t_row(c), u[static_cast<size_t>(m)], sp.tent(m));
        }
    }
}

// Polarization output 2 a^{(0)} - a^{(1)}/2 - a^{(2)}/2, clamped below by the
// unit's ReLU, written as out_scale * h into the destination row; the six
// work rows are zeroed for reuse (their values are nonnegative wherever the
// inputs were in range).
void gadget_finish(BlockSketch& sk, const GadgetPlan& g) {
    const int uh = sk.unit();
    sk.in(uh, g.a_row(0), 2.0);
    sk.in(uh, g.a_row(1), -0.5);
    sk.in(uh, g.a_row(2), -0.5);
    sk.out(g.dest, uh, g.out_scale);
    for (int r = 0; r < 6; ++r) {
        const int ue = sk.unit();
        sk.in(ue, g.scratch + r, 1.0);
        sk.out(g.scratch + r, ue, -1.0);
    }
}

std::vector<GadgetPlan> bank_stage_plans(const RowMap& rows, int degree) {
    std::vector<GadgetPlan> plans;
    int g = 0;
    for (const auto& p : rows.bank) {
        if (p.degree() != degree) continue;
        int i = 0;
        while (p.e[static_cast<size_t>(i)] == 0) ++i;
        MultiIndex parent = p;
        parent.e[static_cast<size_t>(i)] -= 1;
        const int u_row = rows.row_of_monomial(parent);
        const int v_row = rows.row_of_input(i);
        GadgetPlan plan;
        plan.combo[0] = {{u_row, 0.5}, {v_row, 0.5}};
        plan.combo[1] = {{u_row, 1.0}};
        plan.combo[2] = {{v_row, 1.0}};
        plan.scratch = rows.scratch_begin + 6 * g;
        plan.dest = rows.row_of_monomial(p);
        plan.out_scale = 1.0;
        plans.push_back(std::move(plan));
        ++g;
    }
    return plans;
}

void emit_bank_stage(std::vector<TransformerBlock>& blocks, const RowMap& rows,
                     const SawtoothPlan& sp, int L, int degree) {
    const auto plans = bank_stage_plans(rows, degree);
    const int D = rows.state_dim;
    BlockSketch first;
    for (const auto& g : plans) gadget_first_round(first, sp, g);
    blocks.push_back(seal(std::move(first), D, inert_attention(D)));
    for (int round = 2; round <= L; ++round) {
        BlockSketch sk;
        for (const auto& g : plans) gadget_round(sk, sp, g, round);
        blocks.push_back(seal(std::move(sk), D, inert_attention(D)));
    }
    BlockSketch fin;
    for (const auto& g : plans) gadget_finish(fin, g);
    blocks.push_back(seal(std::move(fin), D, inert_attention(D)));
}

// Weighted reads folded into the final block: plain rows are added through
// fresh passthrough units; rows clamped in that very block are reconstructed
// from the clamp's own units.
struct ReadoutFold {
    int row = -1;
    std::vector<std::pair<int, double>> pass_reads;
    std::map<int, double> clamped_reads;
};

void emit_recursion_stage(std::vector<TransformerBlock>& blocks, const RowMap& rows,
                          const BuildBudget& b, const SawtoothPlan& sp, int rank,
                          const ReadoutFold* fold) {
    const int D = rows.state_dim;
    const double inv_n = 1.0 / static_cast<double>(b.n);
    const long long p_parent = falling_factorial(b.n, rank - 1);
    const double inv_p = p_parent > 0 ? 1.0 / static_cast<double>(p_parent) : 0.0;
    const double out_scale = static_cast<double>(b.n) * static_cast<double>(p_parent);
    const double ceiling = static_cast<double>(falling_factorial(b.n, rank));

    std::vector<GadgetPlan> plans;
    std::vector<std::map<int, int>> merge_mult;  // per gadget: state row -> multiplicity
    int g = 0;
    for (const auto& t : rows.tuples) {
        if (t.rank() != rank) continue;
        // Split t into a rank-(r-1) parent and its smallest part q; the
        // product identity then rebuilds t from parent * q minus the tuples
        // where q merged into one of the parent's parts.
        const MultiIndex q = t.parts.back();
        std::vector<MultiIndex> par(t.parts.begin(), t.parts.end() - 1);
        const int par_row = rows.row_of_tuple(canonical_tuple(par));
        const int q_row = rows.row_of_monomial(q);
        GadgetPlan plan;
        plan.combo[0] = {{par_row, 0.5 * inv_p}, {q_row, 0.5 * inv_n}};
        plan.combo[1] = {{par_row, inv_p}};
        plan.combo[2] = {{q_row, inv_n}};
        plan.scratch = rows.scratch_begin + 6 * g;
        plan.dest = rows.row_of_tuple(t);
        plan.out_scale = out_scale;
        std::map<int, int> merges;
        for (size_t i = 0; i < par.size(); ++i) {
            auto merged = par;
            for (int row = 0; row < q.dims(); ++row)
                merged[i].e[static_cast<size_t>(row)] += q.e[static_cast<size_t>(row)];
            merges[rows.row_of_tuple(canonical_tuple(std::move(merged)))] += 1;
        }
        merge_mult.push_back(std::move(merges));
        plans.push_back(std::move(plan));
        ++g;
    }

    BlockSketch first;
    for (const auto& p : plans) gadget_first_round(first, sp, p);
    blocks.push_back(seal(std::move(first), D, inert_attention(D)));
    for (int round = 2; round <= b.L; ++round) {
        BlockSketch sk;
        for (const auto& p : plans) gadget_round(sk, sp, p, round);
        blocks.push_back(seal(std::move(sk), D, inert_attention(D)));
    }

    {
        BlockSketch sk;
        std::map<int, int> shared_units;  // sub-term row -> passthrough unit
        for (size_t gi = 0; gi < plans.size(); ++gi) {
            gadget_finish(sk, plans[gi]);
            for (const auto& [row, mult] : merge_mult[gi]) {
                auto it = shared_units.find(row);
                if (it == shared_units.end()) {
                    const int u = sk.unit();
                    sk.in(u, row, 1.0);
                    it = shared_units.emplace(row, u).first;
                }
                sk.out(plans[gi].dest, it->second, -static_cast<double>(mult));
            }
        }
        blocks.push_back(seal(std::move(sk), D, inert_attention(D)));
    }

    {
        // Clamp each fresh tuple row into [0, P(n, rank)]:
        // z += ReLU(-z) - ReLU(z - P). For rank > n the ceiling is 0 and the
        // row is pinned to the exact value 0.
        BlockSketch sk;
        for (const auto& p : plans) {
            const int z = p.dest;
            const int uneg = sk.unit();
            sk.in(uneg, z, -1.0);
            const int uover = sk.unit();
            sk.in(uover, z, 1.0);
            sk.bias(uover, -ceiling);
            sk.out(z, uneg, 1.0);
            sk.out(z, uover, -1.0);
            if (fold) {
                const auto it = fold->clamped_reads.find(z);
                if (it != fold->clamped_reads.end()) {
                    // clamped value = ReLU(z) - ReLU(z - P)
                    const int uplus = sk.unit();
                    sk.in(uplus, z, 1.0);
                    sk.out(fold->row, uplus, it->second);
                    sk.out(fold->row, uover, -it->second);
                }
            }
        }
        if (fold) {
            for (const auto& [row, c] : fold->pass_reads) {
                const int u = sk.unit();
                sk.in(u, row, 1.0);
                sk.out(fold->row, u, c);
            }
        }
        blocks.push_back(seal(std::move(sk), D, inert_attention(D)));
    }
}

long long ipow_ll(long long base, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

}  // namespace

std::pair<FfnNetwork, RowMap> build_monomial_bank(const BuildBudget& b) {
    b.validate();
    RowMap rows = make_layout(b, false, false);
    rows.scratch_begin = 0;
    rows.scratch_rows = 0;  // the plain network keeps gadget state in hidden units
    rows.state_dim = rows.tuple_begin;
    const int B = rows.state_dim;

    FfnNetwork net;
    if (b.s == 1) {
        FfnLayer id;
        id.w = Matrix::identity(B);
        id.b = Vector(static_cast<size_t>(B), 0.0);
        net.layers.push_back(std::move(id));
        return {std::move(net), std::move(rows)};
    }

    const SawtoothPlan sp(b.gadget());
    using Expr = std::vector<std::pair<int, double>>;  // combos over the previous layer
    const auto scaled = [](Expr e, double s) {
        for (auto& [c, v] : e) v *= s;
        return e;
    };
    const auto plus = [](Expr a, const Expr& bb) {
        a.insert(a.end(), bb.begin(), bb.end());
        return a;
    };

    struct LayerBuild {
        int prev_dim;
        std::vector<Expr> rows_;
        std::vector<double> biases;
        int add(Expr w, double bias) {
            rows_.push_back(std::move(w));
            biases.push_back(bias);
            return static_cast<int>(rows_.size()) - 1;
        }
        FfnLayer seal() const {
            FfnLayer lay;
            lay.w = Matrix::zeros(static_cast<int>(rows_.size()), prev_dim);
            lay.b = Vector(biases.begin(), biases.end());
            for (size_t r = 0; r < rows_.size(); ++r)
                for (const auto& [c, v] : rows_[r]) lay.w.at(static_cast<int>(r), c) += v;
            return lay;
        }
    };

    std::vector<Expr> row_expr(static_cast<size_t>(B));
    for (int r = 0; r < B; ++r) row_expr[static_cast<size_t>(r)] = {{r, 1.0}};
    int prev_dim = B;

    for (int deg = 2; deg <= b.s; ++deg) {
        struct Chan {
            Expr a;
            std::vector<int> t_units;
        };
        struct Gadget {
            std::array<Expr, 3> in;
            int dest;
            std::array<Chan, 3> ch;
        };
        std::vector<Gadget> gs;
        for (const auto& p : rows.bank) {
            if (p.degree() != deg) continue;
            int i = 0;
            while (p.e[static_cast<size_t>(i)] == 0) ++i;
            MultiIndex parent = p;
            parent.e[static_cast<size_t>(i)] -= 1;
            const Expr& u = row_expr[static_cast<size_t>(rows.row_of_monomial(parent))];
            const Expr& v = row_expr[static_cast<size_t>(rows.row_of_input(i))];
            Gadget gd;
            gd.in = {plus(scaled(u, 0.5), scaled(v, 0.5)), u, v};
            gd.dest = rows.row_of_monomial(p);
            gs.push_back(std::move(gd));
        }

        // Round 1: passthroughs for every tracked row plus breakpoint units
        // on the (nonnegative) channel inputs.
        {
            LayerBuild lb{prev_dim, {}, {}};
            std::vector<int> pass(static_cast<size_t>(B));
            for (int r = 0; r < B; ++r)
                pass[static_cast<size_t>(r)] = lb.add(row_expr[static_cast<size_t>(r)], 0.0);
            for (auto& gd : gs)
                for (int c = 0; c < 3; ++c) {
                    auto& ch = gd.ch[static_cast<size_t>(c)];
                    ch.t_units.resize(static_cast<size_t>(sp.U));
                    for (int m = 0; m < sp.U; ++m)
                        ch.t_units[static_cast<size_t>(m)] =
                            lb.add(gd.in[static_cast<size_t>(c)], -sp.breakpoint(m));
                    ch.a = {{ch.t_units[0], 1.0}};
                    for (int m = 0; m < sp.U; ++m)
                        ch.a.emplace_back(ch.t_units[static_cast<size_t>(m)], -sp.drop(1, m));
                }
            prev_dim = static_cast<int>(lb.rows_.size());
            net.layers.push_back(lb.seal());
            for (int r = 0; r < B; ++r) row_expr[static_cast<size_t>(r)] = {{pass[static_cast<size_t>(r)], 1.0}};
        }

        for (int round = 2; round <= b.L; ++round) {
            LayerBuild lb{prev_dim, {}, {}};
            std::vector<int> pass(static_cast<size_t>(B));
            for (int r = 0; r < B; ++r)
                pass[static_cast<size_t>(r)] = lb.add(row_expr[static_cast<size_t>(r)], 0.0);
            for (auto& gd : gs)
                for (int c = 0; c < 3; ++c) {
                    auto& ch = gd.ch[static_cast<size_t>(c)];
                    const int a_unit = lb.add(ch.a, 0.0);
                    Expr t;
                    for (int m = 0; m < sp.U; ++m)
                        t.emplace_back(ch.t_units[static_cast<size_t>(m)], sp.tent(m));
                    std::vector<int> nu(static_cast<size_t>(sp.U));
                    for (int m = 0; m < sp.U; ++m) nu[static_cast<size_t>(m)] = lb.add(t, -sp.breakpoint(m));
                    ch.t_units = std::move(nu);
                    ch.a = {{a_unit, 1.0}};
                    for (int m = 0; m < sp.U; ++m)
                        ch.a.emplace_back(ch.t_units[static_cast<size_t>(m)], -sp.drop(round, m));
                }
            prev_dim = static_cast<int>(lb.rows_.size());
            net.layers.push_back(lb.seal());
            for (int r = 0; r < B; ++r) row_expr[static_cast<size_t>(r)] = {{pass[static_cast<size_t>(r)], 1.0}};
        }

        // Finish: one clamped polarization unit per gadget becomes the new
        // monomial row; all other rows pass through.
        {
            LayerBuild lb{prev_dim, {}, {}};
            std::vector<int> pass(static_cast<size_t>(B));
            for (int r = 0; r < B; ++r)
                pass[static_cast<size_t>(r)] = lb.add(row_expr[static_cast<size_t>(r)], 0.0);
            std::vector<std::pair<int, int>> fresh;  // (dest, unit)
            for (auto& gd : gs) {
                const Expr h = plus(plus(scaled(gd.ch[0].a, 2.0), scaled(gd.ch[1].a, -0.5)),
                                    scaled(gd.ch[2].a, -0.5));
                fresh.emplace_back(gd.dest, lb.add(h, 0.0));
            }
            prev_dim = static_cast<int>(lb.rows_.size());
            net.layers.push_back(lb.seal());
            for (int r = 0; r < B; ++r) row_expr[static_cast<size_t>(r)] = {{pass[static_cast<size_t>(r)], 1.0}};
            for (const auto& [dest, unit] : fresh) row_expr[static_cast<size_t>(dest)] = {{unit, 1.0}};
        }
    }

    LayerBuild fin{prev_dim, {}, {}};
    for (int r = 0; r < B; ++r) fin.add(row_expr[static_cast<size_t>(r)], 0.0);
    net.layers.push_back(fin.seal());
    return {std::move(net), std::move(rows)};
}

std::pair<TransformerNetwork, RowMap> build_rank1_network(const BuildBudget& b) {
    b.validate();
    RowMap rows = make_layout(b, false, false);
    const SawtoothPlan sp(b.gadget());
    TransformerNetwork net;
    net.state_dim = rows.state_dim;
    for (int deg = 2; deg <= b.s; ++deg) emit_bank_stage(net.blocks, rows, sp, b.L, deg);
    BlockSketch sum;
    net.blocks.push_back(
        seal(std::move(sum), rows.state_dim, build_summation_attention(rows.state_dim, b.n)));
    return {std::move(net), std::move(rows)};
}

std::pair<TransformerNetwork, RowMap> build_rank_recursion(const BuildBudget& b) {
    b.validate();
    if (b.s < 2) throw std::invalid_argument("build_rank_recursion: requires s >= 2");
    RowMap rows = make_layout(b, true, false);
    const SawtoothPlan sp(b.gadget());
    TransformerNetwork net;
    net.state_dim = rows.state_dim;
    for (int r = 2; r <= b.s; ++r) emit_recursion_stage(net.blocks, rows, b, sp, r, nullptr);
    return {std::move(net), std::move(rows)};
}

BuildResult assemble_theorem1(const Polynomial& f, const BuildBudget& b) {
    b.validate();
    if (f.d != b.d || f.n != b.n)
        throw std::invalid_argument("assemble_theorem1: polynomial dimensions do not match budget");
    if (f.degree() > b.s)
        throw std::invalid_argument("assemble_theorem1: polynomial degree exceeds budget");
    if (!f.terms.empty() && normalize_check(f) > 1.0 + 1e-12)
        throw std::invalid_argument("assemble_theorem1: value at the all-ones matrix exceeds 1");
    const Decomposition dec = decompose(f);

    RowMap rows = make_layout(b, b.s >= 2, true);
    const SawtoothPlan sp(b.gadget());
    TransformerNetwork net;
    net.state_dim = rows.state_dim;

    if (b.s == 1) {
        BlockSketch sk;
        for (const auto& [c, t] : dec.components) {
            const int u = sk.unit();
            sk.in(u, rows.row_of_tuple(t), 1.0);
            sk.out(rows.readout_row, u, c.to_double());
        }
        net.blocks.push_back(
            seal(std::move(sk), rows.state_dim, build_summation_attention(rows.state_dim, b.n)));
    } else {
        for (int deg = 2; deg <= b.s; ++deg) emit_bank_stage(net.blocks, rows, sp, b.L, deg);
        BlockSketch sum;
        net.blocks.push_back(
            seal(std::move(sum), rows.state_dim, build_summation_attention(rows.state_dim, b.n)));
        ReadoutFold fold;
        fold.row = rows.readout_row;
        for (const auto& [c, t] : dec.components) {
            if (t.rank() == b.s)
                fold.clamped_reads[rows.row_of_tuple(t)] += c.to_double();
            else
                fold.pass_reads.emplace_back(rows.row_of_tuple(t), c.to_double());
        }
        for (int r = 2; r <= b.s; ++r)
            emit_recursion_stage(net.blocks, rows, b, sp, r, r == b.s ? &fold : nullptr);
    }

    BuildResult res;
    res.net = std::move(net);
    res.readout = ReadOut{rows.readout_row, b.n, dec.constant.to_double()};
    res.rows = std::move(rows);
    res.budget = b;

    const SizeReport sr = size_report(res.net);
    if (sr.width > full_width_limit(b) || sr.depth > full_depth_limit(b))
        throw std::logic_error("assemble_theorem1: construction exceeded its size budget");
    return res;
}

Matrix embed_input(const Matrix& x, const RowMap& rows) {
    if (x.rows != rows.d || x.cols != rows.n)
        throw std::invalid_argument("embed_input: input must be d x n");
    Matrix state = Matrix::zeros(rows.state_dim, rows.n + 1);
    for (int i = 0; i < rows.d; ++i)
        for (int j = 0; j < rows.n; ++j) state.at(i, j) = x.at(i, j);
    return state;
}

double read_out(const Matrix& final_state, const ReadOut& r) {
    return final_state.at(r.row, r.col) + r.bias;
}

long long bank_width_limit(const BuildBudget& b) {
    return checked_mul(checked_mul(12LL * b.s, ipow_ll(b.d, b.s)), b.N);
}

int bank_depth_limit(const BuildBudget& b) { return (b.s - 1) * (b.L + 1); }

long long rank1_width_limit(const BuildBudget& b) { return bank_width_limit(b); }

int rank1_depth_limit(const BuildBudget& b) { return bank_depth_limit(b) + 1; }

long long recursion_width_limit(const BuildBudget& b) { return full_width_limit(b); }

int recursion_depth_limit(const BuildBudget& b) { return (b.s - 1) * (b.L + 2); }

long long full_width_limit(const BuildBudget& b) {
    return checked_mul(checked_mul(12LL, ipow_ll(2LL * b.d, b.s)), b.N);
}

int full_depth_limit(const BuildBudget& b) { return 2 * b.s * b.L + 3 * b.s; }

double rank1_error_bound(const BuildBudget& b, int degree) {
    return static_cast<double>(b.n) * static_cast<double>(degree - 1) *
           std::pow(static_cast<double>(b.N), -static_cast<double>(b.L));
}

double tuple_error_bound(const BuildBudget& b, const RankTuple& t) {
    const int r = t.rank();
    double prod = 1.0;
    for (const auto& p : t.parts) prod *= static_cast<double>(p.degree() + 1);
    const double head = static_cast<double>(falling_factorial(b.n + r - 1, r)) * prod -
                        std::pow(static_cast<double>(b.n), static_cast<double>(r));
    return head * std::pow(static_cast<double>(b.N), -static_cast<double>(b.L));
}

double end_to_end_error_bound(const BuildBudget& b, double f_at_ones) {
    return std::pow(8.0, static_cast<double>(b.s)) *
           std::pow(static_cast<double>(b.N), -static_cast<double>(b.L)) * f_at_ones;
}

}  // namespace polyformer
