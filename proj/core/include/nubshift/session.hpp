#pragma once

#include <map>
#include <string>
#include <vector>

#include "nubshift/ep_word.hpp"
#include "nubshift/finite_group.hpp"
#include "nubshift/group_shift.hpp"
#include "nubshift/limits.hpp"
#include "nubshift/sliding_hom.hpp"

namespace nubshift {

/// Named workspace of groups, shifts, homomorphisms, words and inverse
/// systems.  A session starts pre-populated with a corpus of small built-in
/// objects and can grow via definition lines of the form
///
///     <name> = <constructor>(<arg>, ...)
///
/// Recognised constructors: cyclic(n), s3(), direct_product(g1, g2),
/// full_shift(g), constants_shift(g), trivial_shift(g), sft_file(path),
/// hom_file(path), group_file(path), fs_word(g, start, s0, s1, ...),
/// periodic_word(g, s0, ...), difference_tower(p, levels), builtin(name).
class Session {
public:
    Session();

    /// Parse and execute one definition line.  Blank lines and lines whose
    /// first non-space character is '#' are ignored.
    void define_line(const std::string& line);

    /// Execute every definition line in a file.
    void load_definitions(const std::string& path);

    GroupPtr group(const std::string& name) const;
    const GroupShiftSFT& sft(const std::string& name) const;
    const SlidingBlockHom& hom(const std::string& name) const;
    const EPWord& word(const std::string& name) const;
    const InverseSystem& system(const std::string& name) const;

    bool has_group(const std::string& name) const;
    bool has_sft(const std::string& name) const;
    bool has_hom(const std::string& name) const;
    bool has_word(const std::string& name) const;

    /// Resolve a shift argument.  Accepts session names as well as the
    /// parameterised forms "full-shift", "constants" and "trivial" (with an
    /// optional "builtin:" prefix), which need `group_hint` to pick the
    /// alphabet.
    GroupShiftSFT resolve_sft(const std::string& name, const std::string& group_hint) const;

    /// Resolve a group argument: a session name or "cyclic:<n>".
    GroupPtr resolve_group(const std::string& name) const;

private:
    void bind_unique(const std::string& name);

    std::map<std::string, GroupPtr> groups_;
    std::map<std::string, GroupShiftSFT> sfts_;
    std::map<std::string, SlidingBlockHom> homs_;
    std::map<std::string, EPWord> words_;
    std::map<std::string, InverseSystem> systems_;
};

/// Result of one check in the built-in verification suite.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;   ///< one or more lines of evidence, '\n'-separated
    double seconds = 0.0;
};

/// Run the built-in verification suite.  `filter` keeps checks whose id or
/// name contains it (empty keeps all); `inject_fault` deliberately flips one
/// expected value so the suite's failure reporting can be demonstrated;
/// `parallel` runs the checks concurrently.
std::vector<CriterionResult> run_verification_suite(const std::string& filter,
                                             bool inject_fault,
                                             bool parallel);

/// Command-line entry point.  Returns the process exit code: 0 on success,
/// 1 when a requested verdict is negative, 2 on usage errors, 3 when a
/// computation reports a library error (unsupported input, width overflow,
/// and the like).
int run_cli(int argc, const char* const* argv);

}  // namespace nubshift
