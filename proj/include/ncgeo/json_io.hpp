#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncgeo/cocycle.hpp"
#include "ncgeo/nc_form.hpp"
#include "ncgeo/spectral.hpp"

namespace ncgeo::io {

using nlohmann::json;

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ["re", "im"] with lowest-terms fraction strings.
json to_json(const GR& z);
GR gr_from_json(const json& j);

/// Row-major nested array of [re, im] pairs.
json to_json(const DenseMatrix& m);
DenseMatrix dense_from_json(const json& j, size_t n);

/// { rows, cols, entries: [[r, c, "re", "im"], …] }.
json matrix_dump(const SparseMatrix& m);
SparseMatrix matrix_from_dump(const json& j);

json to_json(const GroupElement& g);
GroupElement group_from_json(const json& j);

json to_json(const NCForm& w);
NCForm form_from_json(const json& j);

/// Vertex names and the maximal simplices.
json to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const json& j);

/// Only non-identity edges are written.
json to_json(const TransitionCocycle& g);
/// Throws SchemaError for unknown vertices or non-edges and CocycleViolation
/// when the cocycle condition fails.
TransitionCocycle cocycle_from_json(const json& j, std::shared_ptr<const SimplicialComplex> k);

/// { r, slots: [[p, q, dim], …] }.
json page_dump(const SpectralPage& pg);

json read_file(const std::string& path);

}  // namespace ncgeo::io
