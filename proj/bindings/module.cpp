#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtc/generators.hpp"
#include "mtc/io.hpp"
#include "mtc/report.hpp"
#include "mtc/spectral.hpp"

namespace py = pybind11;
using namespace mtc;

namespace {

std::vector<std::vector<Complex>> s_rows(const ModularData& md) {
    std::vector<std::vector<Complex>> rows(md.rank());
    for (int a = 0; a < md.rank(); ++a) {
        rows[a].resize(md.rank());
        for (int b = 0; b < md.rank(); ++b) rows[a][b] = md.s(a, b);
    }
    return rows;
}

std::vector<Complex> twist_list(const ModularData& md) {
    std::vector<Complex> t(md.rank());
    for (int a = 0; a < md.rank(); ++a) t[a] = md.twists(a);
    return t;
}

std::vector<std::vector<std::vector<Int>>> fusion_list(const FusionTensor& n) {
    std::vector<std::vector<std::vector<Int>>> out(n.rank);
    for (int a = 0; a < n.rank; ++a) {
        out[a].resize(n.rank);
        for (int b = 0; b < n.rank; ++b) {
            out[a][b].resize(n.rank);
            for (int c = 0; c < n.rank; ++c) out[a][b][c] = n.at(a, b, c);
        }
    }
    return out;
}

std::vector<std::vector<Int>> int_matrix_list(const IntMatrix& m) {
    std::vector<std::vector<Int>> out(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        out[r].resize(m.cols());
        for (int c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
    }
    return out;
}

CosetSystem build_system(const ModularData& c1, const ModularData& c2, const ModularData& ambient,
                         const std::vector<std::vector<std::vector<Int>>>& branching) {
    std::vector<IntMatrix> zs;
    for (const auto& z : branching) {
        IntMatrix m(c1.rank(), c2.rank());
        if (static_cast<int>(z.size()) != c1.rank()) throw StructuralError("branching row count mismatch");
        for (int a = 0; a < c1.rank(); ++a) {
            if (static_cast<int>(z[a].size()) != c2.rank())
                throw StructuralError("branching column count mismatch");
            for (int p = 0; p < c2.rank(); ++p) m(a, p) = z[a][p];
        }
        zs.push_back(std::move(m));
    }
    return CosetSystem::build(c1, c2, ambient, std::move(zs));
}

} // namespace

PYBIND11_MODULE(_mtccoset, m) {
    m.doc() = "modular tensor category coset toolkit";

    py::register_exception<StructuralError>(m, "StructuralError");
    py::register_exception<InconsistencyError>(m, "InconsistencyError");

    py::class_<ModularData>(m, "ModularData")
        .def_readonly("name", &ModularData::name)
        .def_readonly("labels", &ModularData::labels)
        .def_property_readonly("rank", &ModularData::rank)
        .def_property_readonly("s", &s_rows)
        .def_property_readonly("twists", &twist_list)
        .def("__repr__", [](const ModularData& md) {
            return "<ModularData " + md.name + " rank " + std::to_string(md.rank()) + ">";
        });

    m.def("su2_level", &su2_level, py::arg("k"));
    m.def("minimal_model", &minimal_model, py::arg("p"), py::arg("q"));
    m.def("pointed_cyclic", &pointed_cyclic, py::arg("n"), py::arg("t"));
    m.def("trivial_data", &trivial_data);
    m.def("mirror", &mirror);
    m.def("deligne_product", &deligne_product, py::arg("left"), py::arg("right"));

    m.def("validate_json", [](const ModularData& md) {
        return report_to_json(validation_report(md)).dump();
    });
    m.def("verlinde", [](const ModularData& md) { return fusion_list(verlinde(md)); });
    m.def("quantum_dims", [](const ModularData& md) {
        const QuantumDims q = quantum_dims(md);
        return py::make_tuple(q.d, q.total);
    });
    m.def("dual_permutation", [](const ModularData& md) { return dual_permutation(md); });
    m.def("monodromy_is_trivial",
          [](const ModularData& md, int a, int b) { return monodromy_is_trivial(md, a, b); });
    m.def("balancing_check", [](const ModularData& md) { return balancing_check(md, verlinde(md)); });

    m.def("save_modular_data", &save_modular_data);
    m.def("load_modular_data", &load_modular_data);

    py::class_<CosetSystem>(m, "CosetSystem")
        .def_property_readonly("c1", [](const CosetSystem& cs) { return cs.md1; })
        .def_property_readonly("c2", [](const CosetSystem& cs) { return cs.md2; })
        .def_property_readonly("ambient", [](const CosetSystem& cs) { return cs.mdc; })
        .def_property_readonly("branching",
                               [](const CosetSystem& cs) {
                                   std::vector<std::vector<std::vector<Int>>> out;
                                   for (const auto& z : cs.branching) out.push_back(int_matrix_list(z));
                                   return out;
                               })
        .def("__repr__", [](const CosetSystem& cs) {
            return "<CosetSystem " + cs.mdc.name + " over " + cs.md1.name + "(x)" + cs.md2.name + ">";
        });

    m.def("build_coset_system", &build_system, py::arg("c1"), py::arg("c2"), py::arg("ambient"),
          py::arg("branching"));
    m.def("load_coset_system", [](const std::string& path) { return load_coset_system(path); });
    m.def("save_coset_system", &save_coset_system);

    m.def("kw_set", [](const CosetSystem& cs) { return kw_set(cs); });
    m.def("identify_induced", [](const CosetSystem& cs, int beta) { return identify_induced(cs, beta); });
    m.def("b_coeff", [](const CosetSystem& cs, int i, int alpha) { return b_coeff(cs, i, alpha); });
    m.def("s_covariance_residual",
          [](const CosetSystem& cs) { return s_covariance_check(cs).residual; });
    m.def("field_orbits", [](const CosetSystem& cs) { return field_identification(cs).orbits; });
    m.def("analyze_json",
          [](const CosetSystem& cs) { return report_to_json(analyze_coset(cs)).dump(); });
    m.def("spectral_verify_json",
          [](const CosetSystem& cs) { return report_to_json(spectral_verification(cs)).dump(); });

    m.def(
        "solve_branching",
        [](const ModularData& c1, const ModularData& c2, const ModularData& ambient, Int bound) {
            return solve_branching(c1, c2, ambient, bound);
        },
        py::arg("c1"), py::arg("c2"), py::arg("ambient"), py::arg("bound") = 2);
}
