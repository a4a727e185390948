#include "dcsbox/cryptanalysis.hpp"
#include "dcsbox/errors.hpp"
#include "dcsbox/latency.hpp"
#include "dcsbox/report_io.hpp"
#include "dcsbox/sbox_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dcsbox;

namespace {

GenerationParams build_params(const std::string& beta, const std::string& x0, const std::string& gate, unsigned n,
                              unsigned width, std::uint64_t budget, const std::string& mixer,
                              const std::string& stride, unsigned window_offset) {
    GenerationParams p;
    p.beta = BetaValue::parse(beta, width);
    p.seed_x0 = FixedPointState::from_decimal(x0, width);
    p.gate = DyadicSet::parse(gate);
    p.word_size = n;
    p.budget = budget;
    p.mixer = Mixer::parse(mixer);
    p.stride = parse_stride(stride);
    p.window_offset = window_offset;
    p.validate();
    return p;
}

py::object json_loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

py::dict stats_dict(const LatencyStats& s) {
    py::dict d;
    d["median_cycles"] = s.median_cycles;
    d["p95_cycles"] = s.p95_cycles;
    d["mean_cycles"] = s.mean_cycles;
    d["median_us"] = s.median_us;
    d["p95_us"] = s.p95_us;
    d["trials"] = s.trials;
    return d;
}

LatencyConfig latency_config(unsigned k, std::uint64_t trials, std::uint32_t c_iter, std::uint32_t c_acc,
                             double f_clk_hz, std::uint64_t seed) {
    LatencyConfig c;
    c.rank_k = k;
    c.trials = trials;
    c.c_iter = c_iter;
    c.c_acc = c_acc;
    c.f_clk_hz = f_clk_hz;
    c.rng_seed = seed;
    return c;
}

// Keyword defaults shared by every generation entry point.
#define GEN_ARGS                                                                                                    \
    py::arg("beta") = "pi100", py::arg("x0") = "0.3", py::arg("gate") = "3:5", py::arg("n") = 8,                   \
    py::arg("width") = kDefaultWidth, py::arg("budget") = kDefaultBudget, py::arg("mixer") = "identity",          \
    py::arg("stride") = "overlapping", py::arg("window_offset") = 1

#define LAT_ARGS                                                                                                    \
    py::arg("k") = 3, py::arg("trials") = 2000, py::arg("c_iter") = 1, py::arg("c_acc") = 1,                      \
    py::arg("f_clk_hz") = 200e6, py::arg("seed") = 1

}  // namespace

PYBIND11_MODULE(_dcsbox, m) {
    m.doc() = "Chaotic dyadic-sampled S-box generation and analysis";

    auto base = py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InsufficientBlocks>(m, "InsufficientBlocks", PyExc_RuntimeError);
    py::register_exception<GeneratorStall>(m, "GeneratorStall", PyExc_RuntimeError);
    (void)base;

    py::class_<SBoxTable>(m, "SBox")
        .def(py::init([](std::vector<std::uint32_t> entries, unsigned n) { return SBoxTable(n, std::move(entries)); }),
             py::arg("entries"), py::arg("n") = 8)
        .def_property_readonly("n", &SBoxTable::word_size)
        .def_property_readonly("entries",
                               [](const SBoxTable& t) { return std::vector<std::uint32_t>(t.entries().begin(), t.entries().end()); })
        .def_property_readonly("provenance", [](const SBoxTable& t) { return t.provenance().kind; })
        .def_property_readonly("trace",
                               [](const SBoxTable& t) -> py::object {
                                   if (!t.provenance().trace) return py::none();
                                   const auto& tr = *t.provenance().trace;
                                   py::dict d;
                                   d["iterations"] = tr.iterations;
                                   d["acceptances"] = tr.acceptances;
                                   d["duplicates"] = tr.duplicates;
                                   return d;
                               })
        .def("is_bijective", &SBoxTable::is_bijective)
        .def("to_hex", &write_hex)
        .def("to_json", &write_json)
        .def("inverse", &invert)
        .def("substitute",
             [](const SBoxTable& t, const py::bytes& data) {
                 const std::string raw = data;
                 const auto out = substitute(t, {reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()});
                 return py::bytes(reinterpret_cast<const char*>(out.data()), out.size());
             })
        .def("__len__", &SBoxTable::size)
        .def("__getitem__",
             [](const SBoxTable& t, std::size_t x) {
                 if (x >= t.size()) throw py::index_error();
                 return t[x];
             })
        .def("__eq__", [](const SBoxTable& a, const SBoxTable& b) { return std::ranges::equal(a.entries(), b.entries()); });

    m.def("read_table", [](const std::string& text) { return read_table(text); }, py::arg("text"),
          "Parse a hex grid or JSON table.");
    m.def("gf_baseline", &gf_baseline_sbox, "The GF(2^8) inversion plus affine reference table.");
    m.def("identity", &SBoxTable::identity, py::arg("n") = 8);

    m.def(
        "generate",
        [](const std::string& beta, const std::string& x0, const std::string& gate, unsigned n, unsigned width,
           std::uint64_t budget, const std::string& mixer, const std::string& stride, unsigned window_offset) {
            const auto p = build_params(beta, x0, gate, n, width, budget, mixer, stride, window_offset);
            py::gil_scoped_release release;
            return generate(p);
        },
        GEN_ARGS);

    m.def(
        "analyze",
        [](const SBoxTable& table, std::uint64_t uniformity_samples) {
            std::optional<UniformityRequest> u;
            if (uniformity_samples > 0) {
                const auto& prov = table.provenance();
                u = UniformityRequest{prov.params ? *prov.params : GenerationParams{}, uniformity_samples};
            }
            std::string text;
            {
                py::gil_scoped_release release;
                text = report_to_json(analyze(table, u));
            }
            return json_loads(text);
        },
        py::arg("table"), py::arg("uniformity_samples") = 0, "Metric report as a dict (same shape as the CLI JSON).");

    m.def(
        "uniformity",
        [](std::uint64_t samples, const std::string& beta, const std::string& x0, const std::string& gate, unsigned n,
           unsigned width, std::uint64_t budget, const std::string& mixer, const std::string& stride,
           unsigned window_offset) {
            const auto p = build_params(beta, x0, gate, n, width, budget, mixer, stride, window_offset);
            const auto r = uniformity_test(p, samples);
            py::dict d;
            d["statistic"] = r.statistic;
            d["dof"] = r.dof;
            d["samples"] = r.samples;
            d["lower"] = r.lower;
            d["upper"] = r.upper;
            d["pass"] = r.pass;
            return d;
        },
        py::arg("samples") = 100'000, GEN_ARGS);

    m.def("expected_acceptances", &expected_acceptances, py::arg("n") = 8);
    m.def(
        "expected_cycles",
        [](unsigned n, unsigned k, std::uint64_t trials, std::uint32_t c_iter, std::uint32_t c_acc, double f_clk_hz,
           std::uint64_t seed) { return expected_cycles(latency_config(k, trials, c_iter, c_acc, f_clk_hz, seed), n); },
        py::arg("n") = 8, LAT_ARGS);
    m.def(
        "simulate",
        [](unsigned n, unsigned k, std::uint64_t trials, std::uint32_t c_iter, std::uint32_t c_acc, double f_clk_hz,
           std::uint64_t seed) {
            const auto cfg = latency_config(k, trials, c_iter, c_acc, f_clk_hz, seed);
            LatencyStats s;
            {
                py::gil_scoped_release release;
                s = simulate(cfg, n);
            }
            return stats_dict(s);
        },
        py::arg("n") = 8, LAT_ARGS);
    m.def("cycles_to_us", &cycles_to_time, py::arg("cycles"), py::arg("f_clk_hz") = 200e6);
}
