#include "cvxtalk/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cvxtalk/errors.hpp"

namespace cvxtalk::cli {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    int line = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

// Line of the first occurrence of "key" in the document, 0 if absent.
int line_of_key(const std::string& text, const std::string& key) {
    const auto at = text.find('"' + key + '"');
    return at == std::string::npos ? 0 : line_of_offset(text, at);
}

class Reader {
public:
    explicit Reader(const std::string& text) : text_(text) {}

    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        throw ConfigError(field, line_of_key(text_, field), what);
    }

    double number(const json& j, const std::string& field) const {
        if (!j.is_number()) fail(field, "expected a number");
        const double x = j.get<double>();
        if (!std::isfinite(x)) fail(field, "must be finite");
        return x;
    }

    std::optional<double> number_or_auto(const json& j, const std::string& field) const {
        if (j.is_string() && j.get<std::string>() == "auto") return std::nullopt;
        if (!j.is_number()) fail(field, "expected a number or \"auto\"");
        return number(j, field);
    }

    bool boolean(const json& j, const std::string& field) const {
        if (!j.is_boolean()) fail(field, "expected true or false");
        return j.get<bool>();
    }

    std::string string(const json& j, const std::string& field) const {
        if (!j.is_string()) fail(field, "expected a string");
        return j.get<std::string>();
    }

    void check_keys(const json& obj, std::initializer_list<const char*> allowed) const {
        for (const auto& [key, value] : obj.items()) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok) fail(key, "unknown field");
        }
    }

private:
    const std::string& text_;
};

Compensation parse_compensation(const json& j, const Reader& r) {
    std::string type;
    if (j.is_string()) {
        type = j.get<std::string>();
    } else if (j.is_object()) {
        if (!j.contains("type")) r.fail("compensation", "object needs a \"type\"");
        type = r.string(j.at("type"), "type");
    } else {
        r.fail("compensation", "expected a string or an object");
    }

    if (type == "none") {
        if (j.is_object()) r.check_keys(j, {"type"});
        return NoCompensation{};
    }
    if (type == "interference") {
        InterferenceCompensation c;
        if (j.is_object()) {
            r.check_keys(j, {"type", "phi", "t_r", "target_pair", "optimize_phase"});
            if (j.contains("phi")) c.phi = r.number_or_auto(j.at("phi"), "phi");
            if (j.contains("t_r")) c.t_r = r.number_or_auto(j.at("t_r"), "t_r");
            if (j.contains("optimize_phase")) c.optimize_phase = r.boolean(j.at("optimize_phase"), "optimize_phase");
            if (j.contains("target_pair")) {
                const double p = r.number(j.at("target_pair"), "target_pair");
                if (p != 1.0 && p != 2.0) r.fail("target_pair", "must be 1 or 2");
                c.target_pair = p == 1.0 ? Pair::First : Pair::Second;
            }
        }
        return c;
    }
    if (type == "feedforward") {
        FeedforwardCompensation f;
        if (j.is_object()) {
            r.check_keys(j, {"type", "t_a", "t_b", "grid_search"});
            if (j.contains("t_a")) f.t_a = r.number_or_auto(j.at("t_a"), "t_a");
            if (j.contains("t_b")) f.t_b = r.number_or_auto(j.at("t_b"), "t_b");
            if (j.contains("grid_search")) f.grid_search = r.boolean(j.at("grid_search"), "grid_search");
        }
        return f;
    }
    r.fail(j.is_object() ? "type" : "compensation",
           "unknown compensation \"" + type + "\" (expected none, interference or feedforward)");
}

double transmittance(const json& doc, const Reader& r, const std::string& name) {
    const std::string db_name = name + "_db";
    const bool lin = doc.contains(name), db = doc.contains(db_name);
    if (lin == db) r.fail(lin ? name : db_name, "exactly one of '" + name + "' and '" + db_name + "' must be given");
    return lin ? r.number(doc.at(name), name) : from_db(r.number(doc.at(db_name), db_name));
}

}  // namespace

ConfigError::ConfigError(const std::string& field, int line, const std::string& what)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + "field '" + field +
                         "': " + what),
      field_(field),
      line_(line) {}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

ScenarioConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    const Reader r(text);
    if (!doc.is_object()) r.fail("<document>", "expected a JSON object");
    r.check_keys(doc, {"v", "ln0", "t_c", "T1", "T1_db", "T2", "T2_db", "eps", "crosstalk_variant", "compensation"});

    ScenarioConfig c;
    if (doc.contains("v")) c.v = r.number(doc.at("v"), "v");
    if (doc.contains("ln0")) c.ln0 = r.number(doc.at("ln0"), "ln0");
    if (!doc.contains("t_c")) r.fail("t_c", "missing");
    c.crosstalk.t_c = r.number(doc.at("t_c"), "t_c");
    if (doc.contains("crosstalk_variant")) {
        const std::string v = r.string(doc.at("crosstalk_variant"), "crosstalk_variant");
        if (v == "two_mode") {
            c.crosstalk.variant = CrosstalkVariant::TwoMode;
        } else if (v == "three_mode") {
            c.crosstalk.variant = CrosstalkVariant::ThreeMode;
        } else {
            r.fail("crosstalk_variant", "expected \"two_mode\" or \"three_mode\"");
        }
    }
    c.channel.T1 = transmittance(doc, r, "T1");
    c.channel.T2 = transmittance(doc, r, "T2");
    c.channel.epsilon = doc.contains("eps") ? r.number(doc.at("eps"), "eps") : 0.0;
    if (doc.contains("compensation")) c.compensation = parse_compensation(doc.at("compensation"), r);

    try {
        c.validate();
    } catch (const DomainError& e) {
        // Messages look like "field 'x': ...".
        const std::string msg = e.what();
        const auto a = msg.find('\''), b = msg.find('\'', a + 1);
        std::string field = a != std::string::npos && b != std::string::npos ? msg.substr(a + 1, b - a - 1) : "?";
        std::string key = field;
        if ((field == "T1" || field == "T2") && !doc.contains(field)) key = field + "_db";
        const auto colon = msg.find(": ");
        r.fail(key, colon == std::string::npos ? msg : msg.substr(colon + 2));
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

nlohmann::ordered_json config_to_json(const ScenarioConfig& config) {
    using oj = nlohmann::ordered_json;
    auto num_or_auto = [](const std::optional<double>& x) { return x ? oj(*x) : oj("auto"); };
    oj j;
    if (config.v) j["v"] = *config.v;
    if (config.ln0) j["ln0"] = *config.ln0;
    j["t_c"] = config.crosstalk.t_c;
    j["crosstalk_variant"] = config.crosstalk.variant == CrosstalkVariant::ThreeMode ? "three_mode" : "two_mode";
    j["T1"] = config.channel.T1;
    j["T2"] = config.channel.T2;
    j["eps"] = config.channel.epsilon;
    if (const auto* c = std::get_if<InterferenceCompensation>(&config.compensation)) {
        j["compensation"] = {{"type", "interference"},
                             {"phi", num_or_auto(c->phi)},
                             {"t_r", num_or_auto(c->t_r)},
                             {"target_pair", static_cast<int>(c->target_pair)},
                             {"optimize_phase", c->optimize_phase}};
    } else if (const auto* f = std::get_if<FeedforwardCompensation>(&config.compensation)) {
        j["compensation"] = {{"type", "feedforward"},
                             {"t_a", num_or_auto(f->t_a)},
                             {"t_b", num_or_auto(f->t_b)},
                             {"grid_search", f->grid_search}};
    } else {
        j["compensation"] = {{"type", "none"}};
    }
    return j;
}

}  // namespace cvxtalk::cli
