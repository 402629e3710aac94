#include "polyformer/serialize.hpp"

#include "json.hpp"

#include <stdexcept>

namespace polyformer {

namespace {

using nlohmann::json;

json matrix_j(const Matrix& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"values", m.values}};
}

Matrix matrix_p(const json& j) {
    Matrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    m.values = j.at("values").get<std::vector<double>>();
    if (m.values.size() != static_cast<size_t>(m.rows) * static_cast<size_t>(m.cols))
        throw std::invalid_argument("matrix: values length does not match rows*cols");
    return m;
}

json ffn_j(const FfnNetwork& net) {
    json layers = json::array();
    for (const auto& l : net.layers) layers.push_back(json{{"w", matrix_j(l.w)}, {"b", l.b}});
    return json{{"kind", "ffn"}, {"layers", layers}};
}

FfnNetwork ffn_p(const json& j) {
    if (j.at("kind") != "ffn") throw std::invalid_argument("expected kind \"ffn\"");
    FfnNetwork net;
    for (const auto& l : j.at("layers"))
        net.layers.push_back(FfnLayer{matrix_p(l.at("w")), l.at("b").get<Vector>()});
    if (net.layers.empty()) throw std::invalid_argument("ffn: no layers");
    return net;
}

json transformer_j(const TransformerNetwork& net) {
    json blocks = json::array();
    for (const auto& blk : net.blocks)
        blocks.push_back(json{
            {"attn", json{{"w_o", matrix_j(blk.attn.w_o)},
                          {"w_v", matrix_j(blk.attn.w_v)},
                          {"w_k", matrix_j(blk.attn.w_k)},
                          {"w_q", matrix_j(blk.attn.w_q)}}},
            {"ff", json{{"w1", matrix_j(blk.ff.w1)},
                        {"b1", blk.ff.b1},
                        {"w2", matrix_j(blk.ff.w2)},
                        {"b2", blk.ff.b2}}}});
    return json{{"kind", "transformer"}, {"state_dim", net.state_dim}, {"blocks", blocks}};
}

TransformerNetwork transformer_p(const json& j) {
    if (j.at("kind") != "transformer") throw std::invalid_argument("expected kind \"transformer\"");
    TransformerNetwork net;
    net.state_dim = j.at("state_dim").get<int>();
    for (const auto& b : j.at("blocks")) {
        TransformerBlock blk;
        const auto& a = b.at("attn");
        blk.attn = AttentionParams{matrix_p(a.at("w_o")), matrix_p(a.at("w_v")),
                                   matrix_p(a.at("w_k")), matrix_p(a.at("w_q"))};
        const auto& f = b.at("ff");
        blk.ff.w1 = matrix_p(f.at("w1"));
        blk.ff.b1 = f.at("b1").get<Vector>();
        blk.ff.w2 = matrix_p(f.at("w2"));
        blk.ff.b2 = f.at("b2").get<Vector>();
        net.blocks.push_back(std::move(blk));
    }
    return net;
}

json multi_index_j(const MultiIndex& p) { return json(p.e); }

MultiIndex multi_index_p(const json& j) { return MultiIndex{j.get<std::vector<int>>()}; }

json tuple_j(const RankTuple& t) {
    json parts = json::array();
    for (const auto& p : t.parts) parts.push_back(multi_index_j(p));
    return parts;
}

RankTuple tuple_p(const json& j) {
    RankTuple t;
    for (const auto& p : j) t.parts.push_back(multi_index_p(p));
    return t;
}

json rowmap_j(const RowMap& r) {
    json bank = json::array();
    for (const auto& p : r.bank) bank.push_back(multi_index_j(p));
    json tuples = json::array();
    for (const auto& t : r.tuples) tuples.push_back(tuple_j(t));
    return json{{"d", r.d},
                {"n", r.n},
                {"s", r.s},
                {"bank", bank},
                {"tuples", tuples},
                {"bank_begin", r.bank_begin},
                {"tuple_begin", r.tuple_begin},
                {"readout_row", r.readout_row},
                {"scratch_begin", r.scratch_begin},
                {"scratch_rows", r.scratch_rows},
                {"state_dim", r.state_dim}};
}

RowMap rowmap_p(const json& j) {
    RowMap r;
    r.d = j.at("d").get<int>();
    r.n = j.at("n").get<int>();
    r.s = j.at("s").get<int>();
    for (const auto& p : j.at("bank")) r.bank.push_back(multi_index_p(p));
    for (const auto& t : j.at("tuples")) r.tuples.push_back(tuple_p(t));
    r.bank_begin = j.at("bank_begin").get<int>();
    r.tuple_begin = j.at("tuple_begin").get<int>();
    r.readout_row = j.at("readout_row").get<int>();
    r.scratch_begin = j.at("scratch_begin").get<int>();
    r.scratch_rows = j.at("scratch_rows").get<int>();
    r.state_dim = j.at("state_dim").get<int>();
    return r;
}

json budget_j(const BuildBudget& b) {
    return json{{"d", b.d}, {"n", b.n}, {"s", b.s}, {"N", b.N}, {"L", b.L}};
}

BuildBudget budget_p(const json& j) {
    BuildBudget b;
    b.d = j.at("d").get<int>();
    b.n = j.at("n").get<int>();
    b.s = j.at("s").get<int>();
    b.N = j.at("N").get<int>();
    b.L = j.at("L").get<int>();
    return b;
}

}  // namespace

std::string matrix_to_json(const Matrix& m) { return matrix_j(m).dump(); }

Matrix matrix_from_json(const std::string& text) { return matrix_p(json::parse(text)); }

std::string ffn_to_json(const FfnNetwork& net) { return ffn_j(net).dump(); }

FfnNetwork ffn_from_json(const std::string& text) { return ffn_p(json::parse(text)); }

std::string transformer_to_json(const TransformerNetwork& net) {
    return transformer_j(net).dump();
}

TransformerNetwork transformer_from_json(const std::string& text) {
    return transformer_p(json::parse(text));
}

std::string build_to_json(const BuildResult& r) {
    const SizeReport sr = size_report(r.net);
    json manifest{
        {"budget", budget_j(r.budget)},
        {"rowmap", rowmap_j(r.rows)},
        {"readout", json{{"row", r.readout.row}, {"col", r.readout.col}, {"bias", r.readout.bias}}},
        {"limits", json{{"width", full_width_limit(r.budget)},
                        {"depth", full_depth_limit(r.budget)},
                        {"error_bound_at_ones", end_to_end_error_bound(r.budget, 1.0)}}},
        {"actual", json{{"width", sr.width},
                        {"depth", sr.depth},
                        {"parameter_count", sr.parameter_count}}}};
    return json{{"network", transformer_j(r.net)}, {"manifest", manifest}}.dump();
}

BuildResult build_from_json(const std::string& text) {
    const json j = json::parse(text);
    const json& man = j.at("manifest");
    BuildResult r;
    r.net = transformer_p(j.at("network"));
    r.budget = budget_p(man.at("budget"));
    r.rows = rowmap_p(man.at("rowmap"));
    const json& ro = man.at("readout");
    r.readout = ReadOut{ro.at("row").get<int>(), ro.at("col").get<int>(),
                        ro.at("bias").get<double>()};
    return r;
}

std::string report_to_json(const BoundReport& r) {
    json claims = json::array();
    for (const auto& c : r.claims) {
        const char* kind = c.kind == ClaimRecord::Kind::strict ? "strict"
                           : c.kind == ClaimRecord::Kind::exact ? "exact"
                                                                : "size";
        claims.push_back(json{{"id", c.id},
                              {"kind", kind},
                              {"measured", c.measured},
                              {"bound", c.bound},
                              {"pass", c.pass}});
    }
    return json{{"budget", budget_j(r.budget)},
                {"size", json{{"width", r.actual.width},
                              {"depth", r.actual.depth},
                              {"parameter_count", r.actual.parameter_count}}},
                {"claims", claims},
                {"all_pass", r.all_pass()}}
        .dump();
}

}  // namespace polyformer
