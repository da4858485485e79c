#include "mtc/io.hpp"

#include <filesystem>
#include <fstream>

namespace mtc {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw StructuralError("complex numbers must be [re, im] arrays");
    return {j[0].get<double>(), j[1].get<double>()};
}

json must_get(const json& j, const char* key) {
    if (!j.contains(key)) throw StructuralError(std::string("missing field '") + key + "'");
    return j.at(key);
}

} // namespace

json md_to_json(const ModularData& md) {
    json j;
    j["name"] = md.name;
    j["labels"] = md.labels;
    json rows = json::array();
    for (int a = 0; a < md.rank(); ++a) {
        json row = json::array();
        for (int b = 0; b < md.rank(); ++b) row.push_back(complex_to_json(md.s(a, b)));
        rows.push_back(std::move(row));
    }
    j["s"] = std::move(rows);
    json tw = json::array();
    for (int a = 0; a < md.rank(); ++a) tw.push_back(complex_to_json(md.twists(a)));
    j["twists"] = std::move(tw);
    return j;
}

ModularData md_from_json(const json& j) {
    ModularData md;
    md.name = must_get(j, "name").get<std::string>();
    for (const auto& l : must_get(j, "labels")) md.labels.push_back(l.get<std::string>());
    const int r = md.rank();
    if (r == 0) throw StructuralError("modular data has no labels");
    const json s = must_get(j, "s");
    if (!s.is_array() || static_cast<int>(s.size()) != r)
        throw StructuralError("S-matrix row count does not match labels");
    md.s = CMatrix(r, r);
    for (int a = 0; a < r; ++a) {
        if (!s[a].is_array() || static_cast<int>(s[a].size()) != r)
            throw StructuralError("S-matrix is not square");
        for (int b = 0; b < r; ++b) md.s(a, b) = complex_from_json(s[a][b]);
    }
    const json tw = must_get(j, "twists");
    if (!tw.is_array() || static_cast<int>(tw.size()) != r)
        throw StructuralError("twist count does not match labels");
    md.twists = CVector(r);
    for (int a = 0; a < r; ++a) md.twists(a) = complex_from_json(tw[a]);
    return md;
}

void save_modular_data(const ModularData& md, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write " + path);
    out << md_to_json(md).dump(2) << "\n";
}

ModularData load_modular_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw StructuralError("parse error in " + path + ": " + e.what());
    }
    return md_from_json(j);
}

json coset_to_json(const CosetSystem& cs) {
    json j;
    j["c1"] = md_to_json(cs.md1);
    j["c2"] = md_to_json(cs.md2);
    j["ambient"] = md_to_json(cs.mdc);
    json branching = json::object();
    for (int i = 0; i < cs.nI(); ++i) {
        json rows = json::array();
        for (int alpha = 0; alpha < cs.nJ(); ++alpha)
            for (int phi = 0; phi < cs.nK(); ++phi)
                if (cs.branching[i](alpha, phi) != 0)
                    rows.push_back({{"c1", cs.md1.labels[alpha]},
                                    {"c2", cs.md2.labels[phi]},
                                    {"mult", cs.branching[i](alpha, phi)}});
        branching[cs.mdc.labels[i]] = std::move(rows);
    }
    j["branching"] = std::move(branching);
    return j;
}

namespace {

ModularData md_from_json_or_file(const json& j, const std::string& base_dir) {
    if (j.is_object() && j.contains("file")) {
        std::filesystem::path p = j.at("file").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        return load_modular_data(p.string());
    }
    return md_from_json(j);
}

int label_index(const ModularData& md, const std::string& label) {
    for (int i = 0; i < md.rank(); ++i)
        if (md.labels[i] == label) return i;
    throw StructuralError("unknown label '" + label + "' in " + md.name);
}

} // namespace

CosetSystem coset_from_json(const json& j, const std::string& base_dir, Tolerances tol) {
    ModularData md1 = md_from_json_or_file(must_get(j, "c1"), base_dir);
    ModularData md2 = md_from_json_or_file(must_get(j, "c2"), base_dir);
    ModularData mdc = md_from_json_or_file(must_get(j, "ambient"), base_dir);

    std::vector<IntMatrix> branching(mdc.rank(), IntMatrix::Zero(md1.rank(), md2.rank()));
    const json b = must_get(j, "branching");
    if (!b.is_object()) throw StructuralError("branching must map ambient labels to entry lists");
    for (const auto& [key, rows] : b.items()) {
        const int i = label_index(mdc, key);
        for (const auto& row : rows) {
            const int alpha = label_index(md1, must_get(row, "c1").get<std::string>());
            const int phi = label_index(md2, must_get(row, "c2").get<std::string>());
            branching[i](alpha, phi) = must_get(row, "mult").get<Int>();
        }
    }
    return CosetSystem::build(std::move(md1), std::move(md2), std::move(mdc), std::move(branching), tol);
}

void save_coset_system(const CosetSystem& cs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write " + path);
    out << coset_to_json(cs).dump(2) << "\n";
}

CosetSystem load_coset_system(const std::string& path, Tolerances tol) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw StructuralError("parse error in " + path + ": " + e.what());
    }
    return coset_from_json(j, std::filesystem::path(path).parent_path().string(), tol);
}

void save_solutions(const std::vector<CosetSystem>& solutions, const std::string& path) {
    json j;
    j["count"] = solutions.size();
    json arr = json::array();
    for (const auto& cs : solutions) arr.push_back(coset_to_json(cs));
    j["solutions"] = std::move(arr);
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace mtc
