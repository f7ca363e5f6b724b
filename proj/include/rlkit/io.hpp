#pragma once

#include "rlkit/algebra.hpp"
#include "rlkit/filters.hpp"
#include "rlkit/poset.hpp"
#include "rlkit/poset_product.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rlkit {

using Json = nlohmann::ordered_json;

/// {"size": n, "meet": [[..]], "join": [[..]], "prod": [[..]], "impl": [[..]],
///  "bottom": i, "top": j}
Json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);

/// Builtin chain names "L2".."L64"; anything else is read as a file path.
/// The loaded algebra is structurally checked but not axiom-validated.
Algebra resolve_algebra(const std::string& name_or_path);

/// "L<k>" when the tables are literally a Lukasiewicz chain, "A<n>" otherwise.
std::string describe_algebra(const Algebra& a);

/// {"elements": ["a", "b"], "order": [["a", "b"]]} with cover edges a < b.
Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j);

/// {"poset": {...}, "algebras": {"a": "L2", "b": {...}}}
Json frame_to_json(const Frame& f);
Frame frame_from_json(const Json& j);

/// Reads and validates a frame from a file path.
Frame load_frame(const std::string& path);

Json read_json_file(const std::string& path);

/// One equation or sequent per line; '#' starts a comment.
struct FormulaLine {
    enum class Kind { EquationLine, SequentLine } kind;
    Equation equation;  // EquationLine
    Sequent sequent;    // SequentLine
    std::string text;
};
std::vector<FormulaLine> read_formula_file(const std::string& path);

}  // namespace rlkit
