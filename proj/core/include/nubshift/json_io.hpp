#pragma once

#include "nubshift/laurent.hpp"
#include "nubshift/sliding_hom.hpp"

#include <functional>
#include <string>

namespace nubshift {

/// Maps a group name that appears in a descriptor to a live group; throws
/// when the name is unknown.
using GroupResolver = std::function<GroupPtr(const std::string&)>;

/// {"alphabet": "<group name>", "window": l, "blocks": [[i, ...], ...]}
std::string sft_to_json(const GroupShiftSFT& h);
GroupShiftSFT sft_from_json(const std::string& text, const GroupResolver& groups);

/// {"domain": "<name>", "codomain": "<name>", "anchor": a,
///  "rule": {"span": k, "table": [...]}}
/// The rule object is the stable core; domain/codomain/anchor bind it to
/// live groups (anchor defaults to 0 when absent).
std::string hom_to_json(const SlidingBlockHom& phi);
SlidingBlockHom hom_from_json(const std::string& text, const GroupResolver& groups);

/// {"p": p, "val": v, "coeffs": [c0, ...]}
std::string laurent_to_json(const FpLaurent& q);
FpLaurent laurent_from_json(const std::string& text);

/// {"alphabet": "<name>", "left": [...], "core_start": a, "core": [...],
///  "right": [...]}
std::string ep_word_to_json(const EPWord& x);
EPWord ep_word_from_json(const std::string& text, const GroupResolver& groups);

/// Plain-text multiplication table: first line `group <name> <order>`,
/// then <order> rows of <order> symbol indices (row i lists i*j); an
/// optional trailing `names ...` line is accepted and ignored.
std::string group_to_table_text(const FiniteGroup& g);
GroupPtr group_from_table_text(const std::string& text);

} // namespace nubshift
