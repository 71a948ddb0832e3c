#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "transonline/adversaries.hpp"
#include "transonline/concepts.hpp"
#include "transonline/dimensions.hpp"
#include "transonline/game.hpp"
#include "transonline/learners.hpp"
#include "transonline/trees.hpp"

namespace py = pybind11;
using namespace transonline;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

DimensionWitness dim_by_name(const ConceptClass& cls, const std::string& kind, int seq_cap,
                             const Caps& caps) {
  if (kind == "D") return dim_level_littlestone(cls, caps);
  if (kind == "B") return dim_branching(cls, seq_cap, caps);
  if (kind == "L") return dim_littlestone(cls, caps);
  if (kind == "DS") return dim_ds(cls, caps);
  if (kind == "G") return dim_graph(cls, caps);
  if (kind == "NT") return dim_nt(cls, caps);
  throw std::invalid_argument("unknown dimension kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dimensions, learners and game oracles for finite multiclass "
            "transductive online learning";

  py::register_exception<CapError>(m, "CapError");

  py::class_<Caps>(m, "Caps")
      .def(py::init<>())
      .def_readwrite("max_class_size", &Caps::max_class_size)
      .def_readwrite("max_concepts", &Caps::max_concepts)
      .def_readwrite("max_instances", &Caps::max_instances)
      .def_readwrite("max_subseq_len", &Caps::max_subseq_len)
      .def_readwrite("max_minimax_len", &Caps::max_minimax_len)
      .def_readwrite("max_enum_len", &Caps::max_enum_len)
      .def_readwrite("max_worst_case_len", &Caps::max_worst_case_len)
      .def_readwrite("max_experts", &Caps::max_experts);

  py::class_<ConceptClass>(m, "ConceptClass")
      .def(py::init([](std::string name, int n_instances,
                       std::vector<std::vector<Label>> concepts) {
             ConceptClass c{std::move(name), n_instances, std::move(concepts)};
             c.validate();
             return c;
           }),
           py::arg("name"), py::arg("n_instances"), py::arg("concepts"))
      .def_readonly("name", &ConceptClass::name)
      .def_readonly("n_instances", &ConceptClass::n_instances)
      .def_readonly("concepts", &ConceptClass::concepts)
      .def("__len__", &ConceptClass::size)
      .def("value", &ConceptClass::value, py::arg("concept_index"), py::arg("x"))
      .def("to_json", [](const ConceptClass& c) { return json_to_py(class_to_json(c)); })
      .def("__eq__", [](const ConceptClass& a, const ConceptClass& b) { return a == b; })
      .def("__repr__", [](const ConceptClass& c) {
        return "<ConceptClass " + c.name + ": " + std::to_string(c.size()) + " concepts over " +
               std::to_string(c.n_instances) + " instances>";
      });

  m.def("gen_constants", &gen_constants, py::arg("m"), py::arg("n"), py::arg("caps") = Caps());
  m.def("gen_full", &gen_full, py::arg("labels"), py::arg("n"), py::arg("caps") = Caps());
  m.def("gen_branch_class", &gen_branch_class, py::arg("depth"), py::arg("unique_off_branch"),
        py::arg("caps") = Caps());
  m.def("gen_edge_labeled_branch_class", &gen_edge_labeled_branch_class, py::arg("depth"),
        py::arg("caps") = Caps());
  m.def("gen_one_branch_per_level_class", &gen_one_branch_per_level_class, py::arg("depth"),
        py::arg("caps") = Caps());
  m.def("gen_nt_chain", &gen_nt_chain, py::arg("d"), py::arg("caps") = Caps());
  m.def("load_class", &load_class, py::arg("path"), py::arg("caps") = Caps());
  m.def("save_class", &save_class, py::arg("cls"), py::arg("path"));

  m.def(
      "realized_labels",
      [](const ConceptClass& c, int x, std::optional<std::vector<int>> members) {
        VersionSet v = VersionSet::full(c);
        if (members) {
          v.members = 0;
          for (int i : *members) v.members |= 1ull << i;
        }
        return realized_labels(v, x);
      },
      py::arg("cls"), py::arg("x"), py::arg("members") = py::none());
  m.def(
      "restrict",
      [](const ConceptClass& c, int x, Label y, std::optional<std::vector<int>> members) {
        VersionSet v = VersionSet::full(c);
        if (members) {
          v.members = 0;
          for (int i : *members) v.members |= 1ull << i;
        }
        VersionSet r = restrict_to(v, x, y);
        std::vector<int> out;
        for (int i = 0; i < c.size(); ++i)
          if (r.contains(i)) out.push_back(i);
        return out;
      },
      py::arg("cls"), py::arg("x"), py::arg("y"), py::arg("members") = py::none(),
      "Surviving concept indices after conditioning on c(x) = y");

  py::class_<LCTree>(m, "LCTree")
      .def_readonly("depth", &LCTree::depth)
      .def_readonly("level_instances", &LCTree::level_instances)
      .def("edge", &LCTree::edge, py::arg("level"), py::arg("node"), py::arg("bit"))
      .def("to_json", [](const LCTree& t) { return json_to_py(tree_to_json(t)); })
      .def("__eq__", [](const LCTree& a, const LCTree& b) { return a == b; });
  m.def("tree_from_json", [](const py::object& obj) {
    py::module_ json = py::module_::import("json");
    std::string s = py::cast<std::string>(json.attr("dumps")(obj));
    return tree_from_json(nlohmann::ordered_json::parse(s));
  });
  m.def("is_littlestone_labeled", &is_littlestone_labeled);
  m.def("is_shattered",
        [](const LCTree& t, const ConceptClass& c) { return is_shattered(t, VersionSet::full(c)); },
        py::arg("tree"), py::arg("cls"));
  m.def("path_branching", [](const LCTree& t, const std::string& sigma) {
    return path_branching(t, sigma).branching_count;
  });
  m.def("min_path_branching", &min_path_branching);
  m.def("branching_levels", &branching_levels);
  m.def("normalize_tree", &normalize_tree, py::arg("tree"), py::arg("cls"), py::arg("q"));

  py::class_<DimensionWitness>(m, "DimensionWitness")
      .def_property_readonly("kind",
                             [](const DimensionWitness& w) { return dim_kind_name(w.kind); })
      .def_readonly("value", &DimensionWitness::value)
      .def_readonly("exact", &DimensionWitness::exact)
      .def_property_readonly("tree",
                             [](const DimensionWitness& w) -> py::object {
                               if (!w.tree) return py::none();
                               return py::cast(*w.tree);
                             })
      .def("to_json", [](const DimensionWitness& w) { return json_to_py(witness_to_json(w)); })
      .def("__repr__", [](const DimensionWitness& w) {
        return "<" + dim_kind_name(w.kind) + (w.exact ? " = " : " >= ") +
               std::to_string(w.value) + ">";
      });

  m.def("dim", &dim_by_name, py::arg("cls"), py::arg("kind"), py::arg("seq_cap") = 4,
        py::arg("caps") = Caps(), "Compute one of D, B, L, DS, G, NT");
  m.def("all_dims", [](const ConceptClass& cls, int seq_cap, const Caps& caps) {
    py::dict out;
    for (const char* k : {"D", "B", "L", "DS", "G", "NT"}) {
      auto w = dim_by_name(cls, k, seq_cap, caps);
      out[k] = py::make_tuple(w.value, w.exact);
    }
    return out;
  }, py::arg("cls"), py::arg("seq_cap") = 4, py::arg("caps") = Caps());

  m.def(
      "branching_potential",
      [](const ConceptClass& c, const std::vector<int>& xs, const Caps& caps) {
        return branching_potential(VersionSet::full(c), xs, caps);
      },
      py::arg("cls"), py::arg("xs"), py::arg("caps") = Caps());
  m.def(
      "count_shattered_subsequences",
      [](const ConceptClass& c, const std::vector<int>& xs, const Caps& caps) {
        return count_shattered_subsequences(VersionSet::full(c), xs, caps);
      },
      py::arg("cls"), py::arg("xs"), py::arg("caps") = Caps());

  py::class_<Stream>(m, "Stream")
      .def_readonly("xs", &Stream::xs)
      .def_readonly("ys", &Stream::ys)
      .def_property_readonly("construction",
                             [](const Stream& s) { return s.meta.construction; })
      .def_property_readonly("sigma", [](const Stream& s) { return s.meta.sigma; })
      .def_property_readonly("realizable", [](const Stream& s) { return s.meta.realizable; })
      .def_property_readonly("concept_index",
                             [](const Stream& s) { return s.meta.concept_index; })
      .def("to_json", [](const Stream& s) { return json_to_py(stream_to_json(s)); });
  m.def("make_stream", [](std::vector<int> xs, std::vector<Label> ys) {
    Stream s;
    s.xs = std::move(xs);
    s.ys = std::move(ys);
    s.meta.construction = "manual";
    return s;
  });
  m.def("path_stream", &path_stream, py::arg("cls"), py::arg("witness"), py::arg("sigma"));
  m.def("path_stream_seeded", &path_stream_seeded, py::arg("cls"), py::arg("witness"),
        py::arg("seed"));
  m.def("logT_stream", &logT_stream, py::arg("cls"), py::arg("normalized"), py::arg("T"),
        py::arg("sigma"));
  m.def("logT_stream_seeded", &logT_stream_seeded, py::arg("cls"), py::arg("normalized"),
        py::arg("T"), py::arg("seed"));
  m.def("block_stream", &block_stream, py::arg("cls"), py::arg("witness"), py::arg("T"),
        py::arg("seed"));
  m.def("worst_case_stream", &worst_case_stream, py::arg("cls"), py::arg("xs"),
        py::arg("learner"), py::arg("caps") = Caps());

  py::class_<TranscriptRow>(m, "TranscriptRow")
      .def_readonly("t", &TranscriptRow::t)
      .def_readonly("x", &TranscriptRow::x)
      .def_readonly("pred", &TranscriptRow::pred)
      .def_readonly("truth", &TranscriptRow::truth)
      .def_readonly("mistake", &TranscriptRow::mistake)
      .def_readonly("potential", &TranscriptRow::potential)
      .def_readonly("scount", &TranscriptRow::scount);
  py::class_<Transcript>(m, "Transcript")
      .def_readonly("learner", &Transcript::learner)
      .def_readonly("rows", &Transcript::rows)
      .def_readonly("mistakes", &Transcript::mistakes)
      .def_readonly("best_in_class_mistakes", &Transcript::best_in_class_mistakes)
      .def_readonly("final_potential", &Transcript::final_potential)
      .def_readonly("final_scount", &Transcript::final_scount)
      .def_property_readonly("regret", &Transcript::regret);

  m.def("run_realizable", &run_realizable, py::arg("learner"), py::arg("cls"), py::arg("stream"),
        py::arg("caps") = Caps());
  m.def("verify_potential_trace", &verify_potential_trace);
  m.def("verify_halving_trace", &verify_halving_trace);

  m.def(
      "minimax_mistakes",
      [](const ConceptClass& c, const std::vector<int>& xs, const Caps& caps) {
        Rational v = minimax_mistakes(c, xs, caps);
        py::module_ fractions = py::module_::import("fractions");
        return fractions.attr("Fraction")(rational_to_string(v));
      },
      py::arg("cls"), py::arg("xs"), py::arg("caps") = Caps(),
      "Exact game value as a fractions.Fraction");

  m.def(
      "verify_bounds",
      [](const ConceptClass& c, int T, const Caps& caps, int b_seq_cap) {
        return json_to_py(verdict_to_json(verify_bounds(c, T, caps, b_seq_cap)));
      },
      py::arg("cls"), py::arg("T"), py::arg("caps") = Caps(), py::arg("b_seq_cap") = 4);

  m.def(
      "run_agnostic",
      [](const ConceptClass& c, const Stream& s, const std::vector<std::uint64_t>& seeds,
         double eta_scale, const Caps& caps) {
        AgnosticSummary a = run_agnostic(c, s, seeds, eta_scale, caps);
        py::dict d;
        d["mean_regret"] = a.mean_regret;
        d["stderr"] = a.stderr_mean;
        d["ci"] = py::make_tuple(a.ci_lo, a.ci_hi);
        d["trials"] = a.trials;
        d["mean_mistakes"] = a.mean_mistakes;
        d["best_in_class_mistakes"] = a.best_in_class_mistakes;
        return d;
      },
      py::arg("cls"), py::arg("stream"), py::arg("seeds"), py::arg("eta_scale") = 1.0,
      py::arg("caps") = Caps());

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
