#include "nubshift/json_io.hpp"

#include <json.hpp>

#include <sstream>

namespace nubshift {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::InvalidDescriptor, std::string("malformed descriptor: ") + e.what());
    }
}

std::vector<Sym> sym_vector(const ordered_json& arr) {
    if (!arr.is_array()) fail(Errc::InvalidDescriptor, "expected an array of symbols");
    std::vector<Sym> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number_integer()) fail(Errc::InvalidDescriptor, "symbols are integers");
        out.push_back(v.get<Sym>());
    }
    return out;
}

GroupPtr resolve(const GroupResolver& groups, const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        fail(Errc::InvalidDescriptor, std::string("missing group name field '") + key + "'");
    return groups(j[key].get<std::string>());
}

} // namespace

std::string sft_to_json(const GroupShiftSFT& h) {
    ordered_json j;
    j["alphabet"] = h.alphabet()->name();
    j["window"] = h.window();
    ordered_json blocks = ordered_json::array();
    for (BlockCode b : h.blocks())
        blocks.push_back(decode_block(b, static_cast<Sym>(h.alphabet()->order()), h.window()));
    j["blocks"] = std::move(blocks);
    return j.dump(2);
}

GroupShiftSFT sft_from_json(const std::string& text, const GroupResolver& groups) {
    const ordered_json j = parse(text);
    const GroupPtr g = resolve(groups, j, "alphabet");
    if (!j.contains("window") || !j["window"].is_number_integer())
        fail(Errc::InvalidDescriptor, "missing window");
    if (!j.contains("blocks") || !j["blocks"].is_array())
        fail(Errc::InvalidDescriptor, "missing blocks");
    std::vector<std::vector<Sym>> blocks;
    for (const auto& row : j["blocks"]) blocks.push_back(sym_vector(row));
    return GroupShiftSFT(g, j["window"].get<int>(), blocks);
}

std::string hom_to_json(const SlidingBlockHom& phi) {
    ordered_json j;
    j["domain"] = phi.domain()->name();
    j["codomain"] = phi.codomain()->name();
    j["anchor"] = phi.anchor();
    j["rule"] = {{"span", phi.span()}, {"table", phi.table()}};
    return j.dump(2);
}

SlidingBlockHom hom_from_json(const std::string& text, const GroupResolver& groups) {
    const ordered_json j = parse(text);
    const GroupPtr dom = resolve(groups, j, "domain");
    const GroupPtr cod = resolve(groups, j, "codomain");
    if (!j.contains("rule") || !j["rule"].is_object())
        fail(Errc::InvalidDescriptor, "missing rule object");
    const auto& rule = j["rule"];
    if (!rule.contains("span") || !rule.contains("table"))
        fail(Errc::InvalidDescriptor, "rule needs span and table");
    const long long anchor = j.contains("anchor") ? j["anchor"].get<long long>() : 0;
    return SlidingBlockHom(dom, cod, rule["span"].get<int>(), sym_vector(rule["table"]), anchor);
}

std::string laurent_to_json(const FpLaurent& q) {
    ordered_json j;
    j["p"] = q.p();
    j["val"] = q.val();
    j["coeffs"] = q.coeffs();
    return j.dump(2);
}

FpLaurent laurent_from_json(const std::string& text) {
    const ordered_json j = parse(text);
    if (!j.contains("p") || !j.contains("val") || !j.contains("coeffs"))
        fail(Errc::InvalidDescriptor, "Laurent descriptor needs p, val, coeffs");
    std::vector<int> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.push_back(c.get<int>());
    return FpLaurent(j["p"].get<int>(), j["val"].get<long long>(), std::move(coeffs));
}

std::string ep_word_to_json(const EPWord& x) {
    ordered_json j;
    j["alphabet"] = x.alphabet()->name();
    j["left"] = x.left_period();
    j["core_start"] = x.core_start();
    j["core"] = x.core();
    j["right"] = x.right_period();
    return j.dump(2);
}

EPWord ep_word_from_json(const std::string& text, const GroupResolver& groups) {
    const ordered_json j = parse(text);
    const GroupPtr g = resolve(groups, j, "alphabet");
    for (const char* key : {"left", "core_start", "core", "right"})
        if (!j.contains(key)) fail(Errc::InvalidDescriptor, "incomplete word descriptor");
    return EPWord(g, sym_vector(j["left"]), j["core_start"].get<long long>(),
                  sym_vector(j["core"]), sym_vector(j["right"]));
}

std::string group_to_table_text(const FiniteGroup& g) {
    std::ostringstream out;
    out << "group " << g.name() << ' ' << g.order() << '\n';
    for (Sym a = 0; a < g.order(); ++a) {
        for (Sym b = 0; b < g.order(); ++b) {
            if (b) out << ' ';
            out << g.mul(a, b);
        }
        out << '\n';
    }
    return out.str();
}

GroupPtr group_from_table_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag, name;
    int order = 0;
    if (!(in >> tag >> name >> order) || tag != "group" || order < 1)
        fail(Errc::InvalidDescriptor, "group file must start with 'group <name> <order>'");
    std::vector<std::vector<Sym>> table(static_cast<std::size_t>(order),
                                        std::vector<Sym>(static_cast<std::size_t>(order)));
    for (auto& row : table)
        for (Sym& cell : row) {
            long long v = 0;
            if (!(in >> v) || v < 0 || v >= order)
                fail(Errc::InvalidDescriptor, "table entry missing or out of range");
            cell = static_cast<Sym>(v);
        }
    // an optional trailing `names ...` line may follow; ignore it
    return std::make_shared<const FiniteGroup>(name, std::move(table));
}

} // namespace nubshift
