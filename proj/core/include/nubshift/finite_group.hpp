#pragma once

#include "nubshift/errors.hpp"

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nubshift {

/// Element of a finite group, an index into its multiplication table.
using Sym = int;

/// A finite group given by its full multiplication table. Construction
/// validates the axioms (identity, inverses, associativity) so downstream
/// code can rely on them.
class FiniteGroup {
public:
    FiniteGroup(std::string name, std::vector<std::vector<Sym>> table);

    Sym order() const { return static_cast<Sym>(mul_.size()); }
    Sym identity() const { return id_; }
    Sym mul(Sym a, Sym b) const { return mul_[a][b]; }
    Sym inv(Sym a) const { return inv_[a]; }
    Sym conj(Sym g, Sym x) const { return mul(mul(g, x), inv(g)); }

    const std::string& name() const { return name_; }
    const std::vector<std::vector<Sym>>& table() const { return mul_; }

    bool is_abelian() const;
    int element_order(Sym a) const;
    int exponent() const;

private:
    std::string name_;
    std::vector<std::vector<Sym>> mul_;
    std::vector<Sym> inv_;
    Sym id_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Structural equality of alphabets (pointer fast path, then table compare).
bool same_group(const GroupPtr& a, const GroupPtr& b);

GroupPtr make_cyclic(int n, const std::string& name = "");
GroupPtr make_symmetric3();
GroupPtr alternating5();
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, const std::string& name = "");

/// Subgroup of a finite group, stored as a sorted element list. Construction
/// verifies closure under products and inverses.
class SubgroupF {
public:
    SubgroupF(GroupPtr group, std::vector<Sym> elements);

    const GroupPtr& group() const { return group_; }
    const std::vector<Sym>& elements() const { return elements_; }
    int order() const { return static_cast<int>(elements_.size()); }
    bool contains(Sym s) const;
    bool is_normal() const;

private:
    GroupPtr group_;
    std::vector<Sym> elements_;
};

SubgroupF subgroup_closure(const GroupPtr& g, std::vector<Sym> gens);
SubgroupF normal_closure(const GroupPtr& g, const std::vector<Sym>& gens);
std::vector<SubgroupF> normal_subgroups(const GroupPtr& g);

/// True when the only normal subgroups are trivial and the whole group.
/// Throws TrivialGroup for the order-1 group, where the notion is undefined.
bool is_simple(const GroupPtr& g);

GroupPtr quotient_group(const GroupPtr& g, const SubgroupF& n, const std::string& name = "");

/// Homomorphism between finite groups as a full image table; construction
/// verifies multiplicativity.
class FiniteHom {
public:
    FiniteHom(GroupPtr domain, GroupPtr codomain, std::vector<Sym> images);

    const GroupPtr& domain() const { return domain_; }
    const GroupPtr& codomain() const { return codomain_; }
    const std::vector<Sym>& images() const { return images_; }
    Sym apply(Sym a) const { return images_[a]; }
    bool is_injective() const;
    bool is_surjective() const;

private:
    GroupPtr domain_;
    GroupPtr codomain_;
    std::vector<Sym> images_;
};

std::vector<FiniteHom> all_homomorphisms(const GroupPtr& dom, const GroupPtr& cod);

inline constexpr int kMaxIsomorphismOrder = 24;
inline constexpr int kMaxSimpleClassOrder = 60;

std::optional<FiniteHom> find_isomorphism(const GroupPtr& a, const GroupPtr& b);
bool isomorphic(const GroupPtr& a, const GroupPtr& b);

/// External semidirect product N x| H for a right action given as one
/// automorphism of N per element of H. Multiplication:
/// (a1,b1)(a2,b2) = (a1 * act(b1)(a2), b1 b2).
GroupPtr semidirect_product(const GroupPtr& n, const GroupPtr& h,
                            const std::vector<FiniteHom>& action, const std::string& name = "");

/// Simple factors of a composition series, as canonical representatives
/// (top quotient first).
std::vector<GroupPtr> composition_series_finite(const GroupPtr& g);

/// Canonical representative of the isomorphism class of a simple group of
/// order <= 60 (cyclic of prime order, or the order-60 nonabelian group).
GroupPtr simple_isomorphism_class(const GroupPtr& g);

/// Text format: "group <name> <order>" followed by the table, row by row.
GroupPtr parse_group_table(std::istream& in);
std::string format_group_table(const GroupPtr& g);

} // namespace nubshift
