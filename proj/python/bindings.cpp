#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tsequiv/changepoint.hpp"
#include "tsequiv/clustering.hpp"
#include "tsequiv/error.hpp"
#include "tsequiv/geo.hpp"
#include "tsequiv/matrices.hpp"
#include "tsequiv/pipeline.hpp"
#include "tsequiv/set_metrics.hpp"
#include "tsequiv/stepfn.hpp"
#include "tsequiv/synthetic.hpp"

namespace py = pybind11;
using namespace tsequiv;

namespace {

std::vector<std::size_t> points_of(const ChangePointSet &cps) { return {cps.points().begin(), cps.points().end()}; }

PipelineConfig config_from(const py::dict &settings) {
    PipelineConfig config;
    for (const auto &[key, value] : settings) config.set(py::str(key), py::str(value));
    return config;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Change-point step-function embeddings of time series with exact L^p geometry.";

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error &e) {
            py::set_error(error, e.what());
        }
    });

    py::enum_<Attribute>(m, "Attribute").value("Mean", Attribute::Mean).value("Variance", Attribute::Variance);

    py::class_<DetectionParams>(m, "DetectionParams")
        .def(py::init<>())
        .def(py::init([](Attribute attribute, double significance, std::size_t min_segment, std::size_t permutations,
                         std::uint64_t seed) {
                 return DetectionParams{attribute, significance, min_segment, permutations, seed};
             }),
             py::arg("attribute") = Attribute::Mean, py::arg("significance") = 0.05, py::arg("min_segment") = 30,
             py::arg("permutations") = 199, py::arg("seed") = 0)
        .def_readwrite("attribute", &DetectionParams::attribute)
        .def_readwrite("significance", &DetectionParams::significance)
        .def_readwrite("min_segment", &DetectionParams::min_segment)
        .def_readwrite("permutations", &DetectionParams::permutations)
        .def_readwrite("seed", &DetectionParams::seed);

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init<std::string, std::vector<double>>(), py::arg("id"), py::arg("values"))
        .def_property_readonly("id", &TimeSeries::id)
        .def_property_readonly("values", [](const TimeSeries &s) { return std::vector<double>(s.values().begin(), s.values().end()); })
        .def_property_readonly("horizon", &TimeSeries::horizon)
        .def("__len__", &TimeSeries::size);

    m.def("detect_change_points",
          [](const TimeSeries &s, const DetectionParams &p) { return points_of(detect_change_points(s, p)); },
          py::arg("series"), py::arg("params") = DetectionParams{});
    m.def("segment_statistics",
          [](const TimeSeries &s, std::vector<std::size_t> cps, Attribute a) {
              return segment_statistics(s, ChangePointSet(std::move(cps), s.horizon()), a);
          },
          py::arg("series"), py::arg("change_points"), py::arg("attribute") = Attribute::Mean);

    py::class_<StepFunction>(m, "StepFunction")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("breakpoints"), py::arg("values"))
        .def_static("constant", &StepFunction::constant, py::arg("value"), py::arg("horizon"))
        .def_static("from_json", &step_function_from_json)
        .def_property_readonly("breakpoints", [](const StepFunction &f) { return std::vector<double>(f.breakpoints().begin(), f.breakpoints().end()); })
        .def_property_readonly("values", [](const StepFunction &f) { return std::vector<double>(f.values().begin(), f.values().end()); })
        .def_property_readonly("horizon", &StepFunction::horizon)
        .def("__call__", &StepFunction::operator())
        .def("__eq__", [](const StepFunction &a, const StepFunction &b) { return a == b; })
        .def("to_json", [](const StepFunction &f) { return to_json(f); });

    m.def("embed", &embed, py::arg("series"), py::arg("params") = DetectionParams{});
    m.def("lp_norm", [](const StepFunction &f, double p) { return lp_norm(f, PNorm(p)); }, py::arg("f"), py::arg("p") = 1.0);
    m.def("lp_distance", [](const StepFunction &f, const StepFunction &g, double p) { return lp_distance(f, g, PNorm(p)); },
          py::arg("f"), py::arg("g"), py::arg("p") = 1.0);
    m.def("inner_product", &inner_product);
    m.def("normalize", [](const StepFunction &f, double p) { return normalize(f, PNorm(p)); }, py::arg("f"), py::arg("p") = 1.0);
    m.def("magnitude", [](const TimeSeries &s, const DetectionParams &params, double p) { return magnitude(s, params, PNorm(p)); },
          py::arg("series"), py::arg("params") = DetectionParams{}, py::arg("p") = 1.0);
    m.def("are_equivalent", &are_equivalent);

    m.def("hausdorff", [](std::vector<std::size_t> s, std::vector<std::size_t> t) { return hausdorff(s, t); });
    m.def("modified_hausdorff", [](std::vector<std::size_t> s, std::vector<std::size_t> t) { return modified_hausdorff(s, t); });
    m.def("mj_semi_metric", [](std::vector<std::size_t> s, std::vector<std::size_t> t, double p) { return mj_semi_metric(s, t, p); },
          py::arg("s"), py::arg("t"), py::arg("p") = 1.0);

    py::enum_<MatrixKind>(m, "MatrixKind")
        .value("Distance", MatrixKind::Distance)
        .value("Affinity", MatrixKind::Affinity)
        .value("Alignment", MatrixKind::Alignment)
        .value("Consistency", MatrixKind::Consistency);

    py::class_<LabeledSquareMatrix>(m, "LabeledSquareMatrix")
        .def(py::init<std::vector<std::string>, Eigen::MatrixXd, MatrixKind>())
        .def_property_readonly("labels", &LabeledSquareMatrix::labels)
        .def_property_readonly("entries", &LabeledSquareMatrix::entries)
        .def_property_readonly("kind", &LabeledSquareMatrix::kind)
        .def("check_invariants", &check_invariants);

    m.def("unscaled_distance_matrix", [](const std::vector<StepFunction> &fs, double p, std::vector<std::string> labels) {
        return unscaled_distance_matrix(fs, PNorm(p), std::move(labels));
    }, py::arg("fs"), py::arg("p") = 1.0, py::arg("labels") = std::vector<std::string>{});
    m.def("normalized_distance_matrix", [](const std::vector<StepFunction> &fs, double p, std::vector<std::string> labels) {
        return normalized_distance_matrix(fs, PNorm(p), std::move(labels));
    }, py::arg("fs"), py::arg("p") = 1.0, py::arg("labels") = std::vector<std::string>{});
    m.def("alignment_matrix", [](const std::vector<StepFunction> &fs, std::vector<std::string> labels) {
        return alignment_matrix(fs, std::move(labels));
    }, py::arg("fs"), py::arg("labels") = std::vector<std::string>{});
    m.def("to_affinity", &to_affinity);
    m.def("consistency_matrix", &consistency_matrix);
    m.def("matrix_norm", &matrix_norm);

    py::class_<StationMetadata>(m, "StationMetadata")
        .def(py::init([](std::string id, double lat, double lon) { return StationMetadata{std::move(id), lat, lon}; }),
             py::arg("id"), py::arg("lat_deg"), py::arg("lon_deg"))
        .def_readwrite("id", &StationMetadata::id)
        .def_readwrite("lat_deg", &StationMetadata::lat_deg)
        .def_readwrite("lon_deg", &StationMetadata::lon_deg);
    m.def("haversine_km", &haversine_km);
    m.def("geo_distance_matrix", [](const std::vector<StationMetadata> &s) { return geo_distance_matrix(s); });

    py::enum_<Linkage>(m, "Linkage")
        .value("Single", Linkage::Single)
        .value("Average", Linkage::Average)
        .value("Complete", Linkage::Complete);

    py::class_<Dendrogram>(m, "Dendrogram")
        .def_readonly("labels", &Dendrogram::labels)
        .def_property_readonly("merges", [](const Dendrogram &d) {
            py::list out;
            for (const auto &mg : d.merges) out.append(py::make_tuple(mg.left, mg.right, mg.height, mg.size));
            return out;
        })
        .def("members", &Dendrogram::members)
        .def("last_merged_leaf", &Dendrogram::last_merged_leaf)
        .def("to_newick", [](const Dendrogram &d) { return to_newick(d); });

    py::class_<ClusterAssignment>(m, "ClusterAssignment")
        .def_readonly("labels", &ClusterAssignment::labels)
        .def_readonly("cluster", &ClusterAssignment::cluster)
        .def_readonly("k", &ClusterAssignment::k);

    m.def("hierarchical_cluster", &hierarchical_cluster, py::arg("matrix"), py::arg("linkage") = Linkage::Average);
    m.def("cut_dendrogram", &cut_dendrogram);
    m.def("spectral_cluster", &spectral_cluster, py::arg("affinity"), py::arg("k"), py::arg("seed") = 0);
    m.def("eigengap_k", &eigengap_k, py::arg("affinity"), py::arg("k_max") = 10);

    py::class_<RegimeSpec>(m, "RegimeSpec")
        .def(py::init([](std::string id, std::vector<std::size_t> b, std::vector<double> mu, std::vector<double> sigma,
                         std::uint64_t seed) { return RegimeSpec{std::move(id), std::move(b), std::move(mu), std::move(sigma), seed}; }),
             py::arg("id"), py::arg("boundaries"), py::arg("means"), py::arg("sigmas"), py::arg("seed") = 0)
        .def_readonly("id", &RegimeSpec::id)
        .def_readonly("boundaries", &RegimeSpec::boundaries)
        .def_readonly("means", &RegimeSpec::means)
        .def_readonly("sigmas", &RegimeSpec::sigmas)
        .def_readonly("seed", &RegimeSpec::seed);
    m.def("generate_series", &generate_series);
    m.def("figure2_specs", &figure2_specs, py::arg("seed") = kFigure2Seed);
    m.def("figure2_suite", &figure2_suite, py::arg("seed") = kFigure2Seed);
    m.def("figure2_detection_params", &figure2_detection_params);
    m.def("perturb", [](const TimeSeries &s, std::size_t t0, std::size_t delta, double epsilon) {
        return perturb(s, PerturbationSpec{t0, delta, epsilon});
    }, py::arg("series"), py::arg("t0"), py::arg("delta"), py::arg("epsilon"));

    m.def("run_analysis", [](const py::dict &settings) {
        const auto summary = run_analysis(config_from(settings));
        py::dict norms;
        for (const auto &r : summary.matrices) {
            if (r.norm) norms[py::str(r.name)] = *r.norm;
        }
        return py::make_tuple(summary.magnitudes, norms);
    }, "Runs the full pipeline; settings use the CLI flag names as keys.");
    m.def("compare_metrics", [](const py::dict &settings) { compare_metrics(config_from(settings)); });
}
