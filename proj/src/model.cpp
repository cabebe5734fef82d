#include "permforge/model.hpp"

#include <limits>
#include <set>
#include <string_view>

#include <json.hpp>

namespace permforge {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr int kMaxPatternLength = 64;

// nlohmann keeps the last value for repeated keys; the model format rejects
// duplicates, so track open objects through the parser callback.
struct DuplicateKeyGuard {
    std::vector<std::set<std::string>> open_objects;

    bool operator()(int /*depth*/, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start:
                open_objects.emplace_back();
                break;
            case json::parse_event_t::object_end:
                open_objects.pop_back();
                break;
            case json::parse_event_t::key:
                if (!open_objects.back().insert(parsed.get<std::string>()).second) {
                    throw SyntaxError("duplicate key \"" + parsed.get<std::string>() + "\"");
                }
                break;
            default:
                break;
        }
        return true;
    }
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
}

void reject_unknown_fields(const json& obj, const std::set<std::string_view>& allowed,
                           const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            fail(where, "unknown field \"" + item.key() + "\"");
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::int64_t as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<std::int64_t>();
}

int as_small_integer(const json& v, const std::string& where) {
    const std::int64_t x = as_integer(v, where);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        fail(where, "integer out of range");
    }
    return static_cast<int>(x);
}

std::vector<int> as_int_array(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of integers");
    std::vector<int> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(as_small_integer(e, where));
    return out;
}

Permutation parse_pattern_base(const json& obj, const std::string& where) {
    std::vector<int> values = as_int_array(require(obj, "pattern", where), where + ".pattern");
    if (values.size() > kMaxPatternLength) {
        fail(where, "pattern longer than " + std::to_string(kMaxPatternLength));
    }
    try {
        return Permutation(std::move(values));
    } catch (const NotABijection& e) {
        fail(where + ".pattern", e.what());
    }
}

Mode parse_mode(const json& obj, const std::string& where) {
    const json& m = require(obj, "mode", where);
    if (m.is_string()) {
        if (m == "contain") return Mode::contain;
        if (m == "avoid") return Mode::avoid;
    }
    fail(where + ".mode", "expected \"contain\" or \"avoid\"");
}

std::vector<Cell> parse_regions(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of [x,y] pairs");
    std::vector<Cell> cells;
    cells.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_array() || e.size() != 2) fail(where, "each region must be a two-element array");
        cells.push_back({as_small_integer(e[0], where), as_small_integer(e[1], where)});
    }
    return cells;
}

Constraint parse_constraint(const json& obj, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    const json& type = require(obj, "type", where);
    if (!type.is_string()) fail(where + ".type", "expected a string");
    const std::string kind = type.get<std::string>();

    try {
        // throwing work stays out of the aggregate initializers below
        if (kind == "classic") {
            reject_unknown_fields(obj, {"type", "mode", "pattern"}, where);
            const Mode mode = parse_mode(obj, where);
            PatternSpec spec = PatternSpec::classic(parse_pattern_base(obj, where));
            return PatternConstraint{std::move(spec), mode};
        }
        if (kind == "vincular") {
            reject_unknown_fields(obj, {"type", "mode", "pattern", "adjacencies"}, where);
            const Mode mode = parse_mode(obj, where);
            auto adj = as_int_array(require(obj, "adjacencies", where), where + ".adjacencies");
            PatternSpec spec = PatternSpec::vincular(parse_pattern_base(obj, where), std::move(adj));
            return PatternConstraint{std::move(spec), mode};
        }
        if (kind == "bivincular") {
            reject_unknown_fields(obj, {"type", "mode", "pattern", "index_adjacencies", "value_adjacencies"},
                                  where);
            const Mode mode = parse_mode(obj, where);
            auto ia = as_int_array(require(obj, "index_adjacencies", where), where + ".index_adjacencies");
            auto va = as_int_array(require(obj, "value_adjacencies", where), where + ".value_adjacencies");
            PatternSpec spec =
                PatternSpec::bivincular(parse_pattern_base(obj, where), std::move(ia), std::move(va));
            return PatternConstraint{std::move(spec), mode};
        }
        if (kind == "mesh") {
            reject_unknown_fields(obj, {"type", "mode", "pattern", "regions"}, where);
            const Mode mode = parse_mode(obj, where);
            auto regions = parse_regions(require(obj, "regions", where), where + ".regions");
            PatternSpec spec = PatternSpec::mesh(parse_pattern_base(obj, where), std::move(regions));
            return PatternConstraint{std::move(spec), mode};
        }
        if (kind == "boxed") {
            reject_unknown_fields(obj, {"type", "mode", "pattern"}, where);
            const Mode mode = parse_mode(obj, where);
            PatternSpec spec = PatternSpec::boxed(parse_pattern_base(obj, where));
            return PatternConstraint{std::move(spec), mode};
        }
        if (kind == "consecutive") {
            reject_unknown_fields(obj, {"type", "mode", "pattern"}, where);
            const Mode mode = parse_mode(obj, where);
            PatternSpec spec = PatternSpec::consecutive(parse_pattern_base(obj, where));
            return PatternConstraint{std::move(spec), mode};
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }

    if (kind == "property") {
        reject_unknown_fields(obj, {"type", "name", "negate"}, where);
        const json& name = require(obj, "name", where);
        if (!name.is_string()) fail(where + ".name", "expected a string");
        auto prop = property_from_name(name.get<std::string>());
        if (!prop) fail(where + ".name", "unknown property \"" + name.get<std::string>() + "\"");
        bool negate = false;
        if (auto it = obj.find("negate"); it != obj.end()) {
            if (!it->is_boolean()) fail(where + ".negate", "expected a boolean");
            negate = it->get<bool>();
        }
        return PropertyConstraint{*prop, negate};
    }

    if (kind == "statistic") {
        reject_unknown_fields(obj, {"type", "terms", "op", "value", "mod"}, where);
        StatisticPredicate pred;
        const json& terms = require(obj, "terms", where);
        if (!terms.is_array()) fail(where + ".terms", "expected an array");
        for (size_t i = 0; i < terms.size(); ++i) {
            const std::string term_where = where + ".terms[" + std::to_string(i) + "]";
            const json& t = terms[i];
            if (!t.is_object()) fail(term_where, "expected an object");
            reject_unknown_fields(t, {"coef", "stat"}, term_where);
            const json& stat = require(t, "stat", term_where);
            if (!stat.is_string()) fail(term_where + ".stat", "expected a string");
            auto sk = statistic_from_name(stat.get<std::string>());
            if (!sk) fail(term_where + ".stat", "unknown statistic \"" + stat.get<std::string>() + "\"");
            pred.terms.push_back({as_integer(require(t, "coef", term_where), term_where + ".coef"), *sk});
        }
        const json& op = require(obj, "op", where);
        if (!op.is_string()) fail(where + ".op", "expected a string");
        auto cmp = comparator_from_name(op.get<std::string>());
        if (!cmp) fail(where + ".op", "unknown comparator \"" + op.get<std::string>() + "\"");
        pred.op = *cmp;
        pred.rhs = as_integer(require(obj, "value", where), where + ".value");
        if (auto it = obj.find("mod"); it != obj.end()) {
            pred.modulus = as_integer(*it, where + ".mod");
        }
        try {
            validate_predicate(pred);
        } catch (const MalformedPredicate& e) {
            fail(where, e.what());
        }
        return StatisticConstraint{std::move(pred)};
    }

    fail(where + ".type", "unknown constraint type \"" + kind + "\"");
}

ordered_json constraint_to_json(const Constraint& c) {
    ordered_json obj;
    if (const auto* pc = std::get_if<PatternConstraint>(&c)) {
        obj["type"] = variant_name(pc->pattern.variant());
        obj["mode"] = pc->mode == Mode::contain ? "contain" : "avoid";
        obj["pattern"] = pc->pattern.base().images();
        switch (pc->pattern.variant()) {
            case PatternVariant::vincular:
                obj["adjacencies"] = pc->pattern.index_adjacencies();
                break;
            case PatternVariant::bivincular:
                obj["index_adjacencies"] = pc->pattern.index_adjacencies();
                obj["value_adjacencies"] = pc->pattern.value_adjacencies();
                break;
            case PatternVariant::mesh: {
                ordered_json regions = ordered_json::array();
                for (const Cell& cell : pc->pattern.regions()) {
                    regions.push_back({cell.x, cell.y});
                }
                obj["regions"] = std::move(regions);
                break;
            }
            default:
                break;
        }
    } else if (const auto* prop = std::get_if<PropertyConstraint>(&c)) {
        obj["type"] = "property";
        obj["name"] = property_name(prop->kind);
        if (prop->negate) obj["negate"] = true;
    } else {
        const auto& sc = std::get<StatisticConstraint>(c);
        obj["type"] = "statistic";
        ordered_json terms = ordered_json::array();
        for (const StatisticTerm& t : sc.pred.terms) {
            terms.push_back({{"coef", t.coefficient}, {"stat", statistic_name(t.stat)}});
        }
        obj["terms"] = std::move(terms);
        obj["op"] = comparator_name(sc.pred.op);
        obj["value"] = sc.pred.rhs;
        if (sc.pred.modulus) obj["mod"] = *sc.pred.modulus;
    }
    return obj;
}

} // namespace

bool satisfies(const Permutation& p, const Constraint& c) {
    if (const auto* pc = std::get_if<PatternConstraint>(&c)) {
        const bool found = contains(p, pc->pattern);
        return pc->mode == Mode::contain ? found : !found;
    }
    if (const auto* prop = std::get_if<PropertyConstraint>(&c)) {
        return check_property(p, prop->kind) != prop->negate;
    }
    return evaluate_predicate(p, std::get<StatisticConstraint>(c).pred);
}

bool satisfies_all(const Permutation& p, const Model& m) {
    if (p.size() != m.length) {
        throw LengthMismatch("permutation length " + std::to_string(p.size()) +
                             " does not match model length " + std::to_string(m.length));
    }
    for (const Constraint& c : m.constraints) {
        if (!satisfies(p, c)) return false;
    }
    return true;
}

void validate_model(const Model& m) {
    if (m.length < 1) throw ValidationError("length must be at least 1");
    for (size_t i = 0; i < m.constraints.size(); ++i) {
        const std::string where = "constraints[" + std::to_string(i) + "]";
        if (const auto* pc = std::get_if<PatternConstraint>(&m.constraints[i])) {
            if (pc->pattern.length() > kMaxPatternLength) {
                fail(where, "pattern longer than " + std::to_string(kMaxPatternLength));
            }
        } else if (const auto* sc = std::get_if<StatisticConstraint>(&m.constraints[i])) {
            try {
                validate_predicate(sc->pred);
            } catch (const MalformedPredicate& e) {
                fail(where, e.what());
            }
        }
    }
}

Model parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text, DuplicateKeyGuard{}, true);
    } catch (const SyntaxError&) {
        throw;
    } catch (const json::exception& e) {
        throw SyntaxError(e.what());
    }

    if (!doc.is_object()) throw ValidationError("document: expected a JSON object");
    reject_unknown_fields(doc, {"length", "constraints", "emit"}, "document");

    Model m;
    m.length = as_small_integer(require(doc, "length", "document"), "document.length");
    if (m.length < 1) fail("document.length", "must be at least 1");

    if (auto it = doc.find("constraints"); it != doc.end()) {
        if (!it->is_array()) fail("document.constraints", "expected an array");
        for (size_t i = 0; i < it->size(); ++i) {
            m.constraints.push_back(parse_constraint((*it)[i], "constraints[" + std::to_string(i) + "]"));
        }
    }

    if (auto it = doc.find("emit"); it != doc.end()) {
        if (!it->is_array()) fail("document.emit", "expected an array");
        for (const auto& e : *it) {
            if (!e.is_string()) fail("document.emit", "expected statistic names");
            auto sk = statistic_from_name(e.get<std::string>());
            if (!sk) fail("document.emit", "unknown statistic \"" + e.get<std::string>() + "\"");
            m.emit.push_back(*sk);
        }
    }

    validate_model(m);
    return m;
}

std::string serialize_model(const Model& m) {
    validate_model(m);
    ordered_json doc;
    doc["length"] = m.length;
    ordered_json constraints = ordered_json::array();
    for (const Constraint& c : m.constraints) constraints.push_back(constraint_to_json(c));
    doc["constraints"] = std::move(constraints);
    if (!m.emit.empty()) {
        ordered_json emit = ordered_json::array();
        for (StatisticKind kind : m.emit) emit.push_back(statistic_name(kind));
        doc["emit"] = std::move(emit);
    }
    return doc.dump(2) + "\n";
}

std::string describe(const Constraint& c) {
    if (const auto* pc = std::get_if<PatternConstraint>(&c)) {
        std::string out = pc->mode == Mode::contain ? "contain " : "avoid ";
        out += variant_name(pc->pattern.variant());
        out += ' ';
        out += pc->pattern.base().to_text();
        switch (pc->pattern.variant()) {
            case PatternVariant::vincular:
                out += " adjacencies";
                for (int a : pc->pattern.index_adjacencies()) out += ' ' + std::to_string(a);
                break;
            case PatternVariant::bivincular:
                out += " index_adjacencies";
                for (int a : pc->pattern.index_adjacencies()) out += ' ' + std::to_string(a);
                out += " value_adjacencies";
                for (int b : pc->pattern.value_adjacencies()) out += ' ' + std::to_string(b);
                break;
            case PatternVariant::mesh:
                out += " regions";
                for (const Cell& cell : pc->pattern.regions()) {
                    out += " (" + std::to_string(cell.x) + "," + std::to_string(cell.y) + ")";
                }
                break;
            default:
                break;
        }
        return out;
    }
    if (const auto* prop = std::get_if<PropertyConstraint>(&c)) {
        std::string out = "property ";
        if (prop->negate) out += "not ";
        out += property_name(prop->kind);
        return out;
    }
    const auto& pred = std::get<StatisticConstraint>(c).pred;
    std::string out = "statistic ";
    for (size_t i = 0; i < pred.terms.size(); ++i) {
        if (i > 0) out += " + ";
        out += std::to_string(pred.terms[i].coefficient) + "*";
        out += statistic_name(pred.terms[i].stat);
    }
    if (pred.modulus) out += " mod " + std::to_string(*pred.modulus);
    out += ' ';
    out += comparator_name(pred.op);
    out += ' ' + std::to_string(pred.rhs);
    return out;
}

} // namespace permforge
