#include "rlkit/io.hpp"

#include <cctype>
#include <fstream>

namespace rlkit {

Json algebra_to_json(const Algebra& a) {
    auto table = [&](const std::vector<Element>& t) {
        Json rows = Json::array();
        for (int i = 0; i < a.n; ++i) {
            Json row = Json::array();
            for (int j = 0; j < a.n; ++j) row.push_back(t[i * a.n + j]);
            rows.push_back(std::move(row));
        }
        return rows;
    };
    Json j;
    j["size"] = a.n;
    j["meet"] = table(a.meet_t);
    j["join"] = table(a.join_t);
    j["prod"] = table(a.prod_t);
    j["impl"] = table(a.impl_t);
    j["bottom"] = a.bottom;
    j["top"] = a.top;
    return j;
}

Algebra algebra_from_json(const Json& j) {
    if (!j.is_object()) throw format_error("algebra JSON must be an object");
    for (const char* key : {"size", "meet", "join", "prod", "impl", "bottom", "top"})
        if (!j.contains(key)) throw format_error(std::string("algebra JSON missing '") + key + "'");
    Algebra a;
    if (!j["size"].is_number_integer()) throw format_error("'size' must be an integer");
    a.n = j["size"].get<int>();
    if (a.n < 1) throw format_error("'size' must be positive");
    auto table = [&](const char* key) {
        const Json& rows = j[key];
        if (!rows.is_array() || static_cast<int>(rows.size()) != a.n)
            throw format_error(std::string("'") + key + "' must be an n x n array");
        std::vector<Element> t;
        t.reserve(static_cast<std::size_t>(a.n) * a.n);
        for (const Json& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != a.n)
                throw format_error(std::string("'") + key + "' must be an n x n array");
            for (const Json& cell : row) {
                if (!cell.is_number_integer())
                    throw format_error(std::string("'") + key + "' entries must be integers");
                const int e = cell.get<int>();
                if (e < 0 || e >= a.n)
                    throw format_error(std::string("'") + key + "' entry out of range");
                t.push_back(e);
            }
        }
        return t;
    };
    a.meet_t = table("meet");
    a.join_t = table("join");
    a.prod_t = table("prod");
    a.impl_t = table("impl");
    a.bottom = j["bottom"].get<int>();
    a.top = j["top"].get<int>();
    if (!a.in_range(a.bottom) || !a.in_range(a.top))
        throw format_error("'bottom'/'top' out of range");
    return a;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw format_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

Algebra resolve_algebra(const std::string& name_or_path) {
    if (name_or_path.size() >= 2 && name_or_path[0] == 'L') {
        bool digits = true;
        for (std::size_t i = 1; i < name_or_path.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name_or_path[i]))) digits = false;
        if (digits) {
            const int k = std::stoi(name_or_path.substr(1));
            if (k >= 2 && k <= 64) return lukasiewicz_chain(k);
            throw format_error("builtin chains range over L2..L64");
        }
    }
    return algebra_from_json(read_json_file(name_or_path));
}

std::string describe_algebra(const Algebra& a) {
    if (a.n >= 2 && a.n <= 64 && a == lukasiewicz_chain(a.n))
        return "L" + std::to_string(a.n);
    return "A" + std::to_string(a.n);
}

Json poset_to_json(const Poset& p) {
    Json j;
    j["elements"] = p.names;
    Json order = Json::array();
    for (auto [i, k] : p.cover_edges()) order.push_back(Json::array({p.names[i], p.names[k]}));
    j["order"] = std::move(order);
    return j;
}

Poset poset_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.contains("order"))
        throw format_error("poset JSON needs 'elements' and 'order'");
    std::vector<std::string> nodes;
    for (const Json& e : j["elements"]) {
        if (!e.is_string()) throw format_error("poset elements must be strings");
        nodes.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Json& e : j["order"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw format_error("poset order entries must be pairs of names");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return make_poset(nodes, edges);
}

Json frame_to_json(const Frame& f) {
    Json j;
    j["poset"] = poset_to_json(f.poset);
    Json algebras = Json::object();
    for (int x = 0; x < f.poset.n; ++x) {
        const std::string name = describe_algebra(f.algebras[x]);
        if (name[0] == 'L')
            algebras[f.poset.names[x]] = name;
        else
            algebras[f.poset.names[x]] = algebra_to_json(f.algebras[x]);
    }
    j["algebras"] = std::move(algebras);
    return j;
}

Frame frame_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("poset") || !j.contains("algebras"))
        throw format_error("frame JSON needs 'poset' and 'algebras'");
    Frame f;
    f.poset = poset_from_json(j["poset"]);
    const Json& algebras = j["algebras"];
    if (!algebras.is_object()) throw format_error("'algebras' must map node names to algebras");
    for (int x = 0; x < f.poset.n; ++x) {
        const std::string& node = f.poset.names[x];
        if (!algebras.contains(node))
            throw format_error("frame assigns no algebra to node '" + node + "'");
        const Json& spec = algebras[node];
        if (spec.is_string())
            f.algebras.push_back(resolve_algebra(spec.get<std::string>()));
        else
            f.algebras.push_back(algebra_from_json(spec));
    }
    validate_frame(f);
    return f;
}

Frame load_frame(const std::string& path) { return frame_from_json(read_json_file(path)); }

std::vector<FormulaLine> read_formula_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open file: " + path);
    std::vector<FormulaLine> out;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t a = line.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) continue;
        const std::size_t b = line.find_last_not_of(" \t\r\n");
        const std::string text = line.substr(a, b - a + 1);
        FormulaLine fl;
        fl.text = text;
        if (text.find("|-") != std::string::npos) {
            fl.kind = FormulaLine::Kind::SequentLine;
            fl.sequent = parse_sequent(text);
        } else {
            fl.kind = FormulaLine::Kind::EquationLine;
            fl.equation = parse_equation(text);
        }
        out.push_back(std::move(fl));
    }
    return out;
}

}  // namespace rlkit
