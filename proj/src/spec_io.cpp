#include "sgact/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sgact {

using nlohmann::json;

namespace {

GeneratorMap parse_generator(const json& g, size_t index) {
    std::string where = "generators[" + std::to_string(index) + "]";
    if (!g.is_object() || !g.contains("kind"))
        throw ValidationError(where + ".kind: missing map kind");
    std::string kind = g.at("kind").get<std::string>();
    try {
        if (kind == "circle_linear") {
            if (!g.contains("d")) throw ValidationError("d: missing degree");
            return GeneratorMap::circle_linear(g.at("d").get<int>());
        }
        if (kind == "circle_nonlinear") {
            if (!g.contains("d")) throw ValidationError("d: missing degree");
            if (!g.contains("eps")) throw ValidationError("eps: missing perturbation");
            return GeneratorMap::circle_nonlinear(g.at("d").get<int>(), g.at("eps").get<double>());
        }
        if (kind == "torus_linear") {
            if (!g.contains("M")) throw ValidationError("M: missing matrix");
            const json& rows = g.at("M");
            if (!rows.is_array() || rows.empty() || rows.size() > 3)
                throw ValidationError("M: expected 1 to 3 rows");
            IntMatrix m;
            m.dim = static_cast<int>(rows.size());
            for (size_t i = 0; i < rows.size(); ++i) {
                if (!rows[i].is_array() || rows[i].size() != rows.size())
                    throw ValidationError("M: matrix must be square");
                for (size_t j = 0; j < rows.size(); ++j)
                    m.a[i][j] = rows[i][j].get<long long>();
            }
            return GeneratorMap::torus_linear(m);
        }
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ValidationError(where + ".kind: unknown kind '" + kind + "'");
}

} // namespace

SemigroupSpec parse_spec_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("spec: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("generators") || !doc.at("generators").is_array())
        throw ValidationError("generators: expected an array of maps");
    std::vector<GeneratorMap> gens;
    const json& arr = doc.at("generators");
    for (size_t i = 0; i < arr.size(); ++i) {
        try {
            gens.push_back(parse_generator(arr[i], i));
        } catch (const json::exception& e) {
            throw ValidationError("generators[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return SemigroupSpec(std::move(gens));
}

SemigroupSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("spec: cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_json(ss.str());
}

std::string spec_to_json(const SemigroupSpec& spec) {
    json arr = json::array();
    for (const auto& g : spec.generators) {
        json item;
        switch (g.kind()) {
            case MapKind::CircleLinear:
                item = {{"kind", "circle_linear"}, {"d", g.degree()}};
                break;
            case MapKind::CircleNonlinear:
                item = {{"kind", "circle_nonlinear"}, {"d", g.degree()}, {"eps", g.nonlinearity()}};
                break;
            case MapKind::TorusLinear: {
                json rows = json::array();
                for (int i = 0; i < g.matrix().dim; ++i) {
                    json row = json::array();
                    for (int j = 0; j < g.matrix().dim; ++j) row.push_back(g.matrix().a[i][j]);
                    rows.push_back(row);
                }
                item = {{"kind", "torus_linear"}, {"M", rows}};
                break;
            }
        }
        arr.push_back(item);
    }
    return json{{"generators", arr}}.dump(2);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace sgact
