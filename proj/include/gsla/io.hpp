#pragma once

// JSON forms of fields, groups, algebras, loop algebras, modules and
// matrices. Every document carries "format": 1. Parse failures throw
// ParseError naming the offending JSON path.

#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include <json.hpp>

#include "gsla/loop.hpp"
#include "gsla/module.hpp"

namespace gsla {

using Json = nlohmann::ordered_json;

inline constexpr int kFormat = 1;

Json to_json(const GroupElem& a);
/// {"moduli": [...]} plus "subgroup": generators when graded by a quotient.
Json to_json(const GradingGroup& q);
Json to_json(const Matrix& m);
/// Basis vectors as rows.
Json to_json(const Subspace& s);
Json to_json(const std::vector<Certificate>& certs);

/// {"format", "field", "group", "dim", "degrees", "brackets", ...}; only i < j
/// pairs are written.
Json to_json(const GradedLieAlgebra& g);
/// Algebra document plus "loop": {"subgroup", "labels", "base"}.
Json to_json(const LoopAlgebra& l);
/// {"format", "algebra" (inline), "dim", "degrees", "action"}.
Json to_json(const GradedModule& w);

/// Brackets with i < j are completed antisymmetrically; entries with i >= j
/// overwrite the single stored entry, so broken tables can be expressed.
GradedLieAlgebra algebra_from_json(const Json& j, const std::string& path = "$");
/// The loop structure when the document has a "loop" member.
std::optional<LoopAlgebra> loop_from_json(const Json& j, const std::string& path = "$");
/// "algebra" may be inline or a file name resolved against base_dir.
GradedModule module_from_json(const Json& j, const std::filesystem::path& base_dir = {}, const std::string& path = "$");

/// Reads a file, or standard input for "-".
Json read_json(const std::string& file);
Json read_json(const std::string& file, std::istream& stdin_stream);

}  // namespace gsla
