#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bfree/blockcode.hpp"
#include "bfree/centralizer.hpp"
#include "bfree/error.hpp"
#include "bfree/io.hpp"
#include "bfree/language.hpp"
#include "bfree/numtheory.hpp"
#include "bfree/pattern.hpp"
#include "bfree/witness.hpp"

namespace py = pybind11;
using namespace bfree;

namespace {

FinitePattern to_pattern(const std::vector<Int>& support,
                         std::optional<std::pair<Int, Int>> window) {
  if (window) return FinitePattern(support, {window->first, window->second});
  return FinitePattern(support);
}

py::tuple from_pattern(const FinitePattern& U) {
  return py::make_tuple(U.support(), py::make_tuple(U.window().lo, U.window().hi));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "B-free subshifts: admissibility, word counts, entropy, centraliser search";

  static py::exception<Error> error(m, "BFreeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  py::class_<BSpec>(m, "BSpec")
      .def_property_readonly("elements",
                             [](const BSpec& B) {
                               return std::vector<Int>(B.elements().begin(),
                                                       B.elements().end());
                             })
      .def_property_readonly("thin_declared", &BSpec::thin_declared)
      .def("density_product",
           [](const BSpec& B) { return static_cast<double>(B.density_product()); })
      .def("to_json", [](const BSpec& B) { return io::bspec_to_json(B).dump(); })
      .def("__contains__", &BSpec::contains)
      .def("__len__", [](const BSpec& B) { return B.elements().size(); })
      .def("__eq__", [](const BSpec& a, const BSpec& b) { return a == b; });

  m.def("validate_bspec",
        [](std::vector<Int> raw, bool thin) { return validate_bspec(std::move(raw), {}, thin); },
        py::arg("elements"), py::arg("thin_declared") = false);
  m.def("prime_powers", &prime_powers, py::arg("exponent"), py::arg("prime_bound"),
        py::arg("thin_declared") = true);
  m.def("bspec_from_argument", &io::bspec_from_argument, py::arg("text"),
        py::arg("prime_bound") = io::kDefaultPrimeBound);
  m.def("bspec_from_json",
        [](const std::string& s) { return io::bspec_from_json(io::Json::parse(s)); });

  m.def("crt_solve",
        [](const std::vector<std::pair<Int, Int>>& system, Int cap) {
          std::vector<Congruence> sys;
          for (auto [r, mod] : system) sys.push_back({r, mod});
          auto s = crt_solve(sys, cap);
          return std::make_pair(s.residue, s.modulus);
        },
        py::arg("system"), py::arg("cap") = kDefaultModulusCap);
  m.def("find_coprime_element",
        [](const BSpec& B, Int t) { return find_coprime_element(B, t); });

  m.def("occupied_residues",
        [](const std::vector<Int>& support, Int b) {
          return occupied_residues(FinitePattern(support), b);
        });
  m.def("is_admissible",
        [](const BSpec& B, const std::vector<Int>& support) -> py::object {
          auto v = is_admissible(FinitePattern(support), B);
          if (v.admissible) return py::make_tuple(true, py::none());
          return py::make_tuple(false, v.violation->modulus);
        },
        "Returns (admissible, smallest violating modulus or None).");
  m.def("bfree_window",
        [](const BSpec& B, Int lo, Int hi) { return bfree_window(B, {lo, hi}).support(); });
  m.def("density_estimate",
        [](const BSpec& B, Int N) {
          auto d = density_estimate(B, N);
          return py::dict(py::arg("observed") = static_cast<double>(d.observed),
                          py::arg("product") = static_cast<double>(d.product),
                          py::arg("count") = d.count);
        });
  m.def("parse_pattern", [](const std::string& s) { return from_pattern(parse_pattern(s)); });

  m.def("count_admissible_words",
        [](const BSpec& B, int n, unsigned threads) {
          CountOptions o;
          o.threads = threads;
          py::gil_scoped_release release;
          return count_admissible_words(B, n, o);
        },
        py::arg("bspec"), py::arg("n"), py::arg("threads") = 1);
  m.def("entropy_report",
        [](const BSpec& B, int n_max) {
          return io::entropy_report_to_json(entropy_report(B, n_max)).dump();
        },
        "Entropy report as a JSON string.");
  m.def("closed_form_entropy", [](const BSpec& B) { return closed_form_entropy(B); });
  m.def("entropy_ratio", &entropy_ratio);

  py::class_<BlockCodeFamily>(m, "BlockCodeFamily")
      .def(py::init<int, int>())
      .def_property_readonly("period", &BlockCodeFamily::period)
      .def_property_readonly("radius", &BlockCodeFamily::radius)
      .def("entry", &BlockCodeFamily::entry)
      .def("set_entry", &BlockCodeFamily::set_entry)
      .def("to_json", [](const BlockCodeFamily& F) { return io::family_to_json(F).dump(); })
      .def("__eq__",
           [](const BlockCodeFamily& a, const BlockCodeFamily& b) { return a == b; });
  m.def("family_from_json",
        [](const std::string& s) { return io::family_from_json(io::Json::parse(s)); });
  m.def("shift_family", &shift_family, py::arg("t"), py::arg("period"), py::arg("radius"));
  m.def("parity_family", &parity_family, py::arg("u"), py::arg("v"), py::arg("radius"));
  m.def("apply_to_pattern",
        [](const BlockCodeFamily& F, const std::vector<Int>& support,
           std::optional<std::pair<Int, Int>> window) {
          return apply_to_pattern(F, to_pattern(support, window)).support();
        },
        py::arg("family"), py::arg("support"), py::arg("window") = py::none());
  m.def("injective_on_language",
        [](const BlockCodeFamily& F, const BSpec& B, int n) {
          return injective_on_language(F, B, n).injective;
        });

  m.def("search",
        [](const BSpec& B, int rho, int k, int n, unsigned threads) {
          SearchOptions o;
          o.threads = threads;
          SearchReport r;
          {
            py::gil_scoped_release release;
            r = search(B, {rho, k, n}, o);
          }
          py::list certs;
          for (const auto& c : r.certificates) {
            certs.append(io::certificate_to_json(c).dump());
          }
          return py::make_tuple(io::search_report_to_json(B, r).dump(), certs);
        },
        py::arg("bspec"), py::arg("rho"), py::arg("k"), py::arg("n"),
        py::arg("threads") = 1,
        "Returns (report JSON, list of certificate JSON strings).");
  m.def("verify_certificate_json",
        [](const BSpec& B, const std::string& s) {
          auto cert = io::certificate_from_json(io::Json::parse(s));
          return certificate_problem(cert.family, B, cert);
        },
        "Empty string when the certificate holds, else the first problem found.");
}
