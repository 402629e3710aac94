#ifndef POLYFORMER_SERIALIZE_HPP
#define POLYFORMER_SERIALIZE_HPP

#include "polyformer/builder.hpp"
#include "polyformer/verify.hpp"

#include <string>

namespace polyformer {

// JSON round-trips. Numbers are printed in shortest-round-trip form, so
// parse(serialize(x)) reproduces every weight bit-for-bit and serializing
// again is byte-identical.
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

std::string ffn_to_json(const FfnNetwork& net);
FfnNetwork ffn_from_json(const std::string& text);

std::string transformer_to_json(const TransformerNetwork& net);
TransformerNetwork transformer_from_json(const std::string& text);

// Full build bundle: the network plus a manifest recording the budget, row
// layout, readout cell, and the size/error budget formulas audited by the
// harness (width/depth limits and the end-to-end error bound coefficient).
std::string build_to_json(const BuildResult& r);
BuildResult build_from_json(const std::string& text);

std::string report_to_json(const BoundReport& r);

}  // namespace polyformer

#endif
