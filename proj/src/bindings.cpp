#include <fstream>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gestura/backend.hpp"
#include "gestura/config.hpp"
#include "gestura/error.hpp"
#include "gestura/eval.hpp"
#include "gestura/finger_state.hpp"
#include "gestura/frame_stream.hpp"
#include "gestura/gesture_engine.hpp"
#include "gestura/intent_parser.hpp"
#include "gestura/planner.hpp"
#include "gestura/pointer_mapping.hpp"
#include "gestura/session.hpp"
#include "gestura/weather.hpp"

namespace py = pybind11;
using namespace gestura;

namespace {

py::dict intent_dict(const Intent& intent) {
  py::dict d;
  d["intent"] = intent_kind_name(intent.kind);
  d["text"] = intent.text ? py::cast(*intent.text) : py::none();
  d["amount"] = intent.amount;
  return d;
}

py::dict event_dict(const GestureEvent& e) {
  py::dict d;
  d["kind"] = gesture_kind_name(e.kind);
  d["t"] = e.t_ms;
  d["x"] = e.x;
  d["y"] = e.y;
  d["dy"] = e.dy;
  return d;
}

py::dict report_dict(const AccuracyReport& r) {
  py::dict rows;
  for (const auto& row : r.rows) {
    py::dict d;
    d["attempts"] = row.attempts;
    d["correct"] = row.correct;
    d["accuracy"] = row.accuracy();
    rows[eval_gesture_name(row.gesture)] = d;
  }
  py::dict out;
  out["gestures"] = rows;
  out["overall"] = r.overall;
  return out;
}

SessionConfig config_from(const py::dict& overrides) {
  SessionConfig cfg;
  for (const auto& [k, v] : overrides) {
    cfg.set(py::str(k).cast<std::string>(), py::str(v).cast<std::string>());
  }
  cfg.validate();
  return cfg;
}

// Python bools stringify as "True"/"False".
SessionConfig config_from_kwargs(const py::kwargs& kwargs) {
  py::dict d;
  for (const auto& [k, v] : kwargs) {
    d[k] = py::isinstance<py::bool_>(v) ? py::str(v.cast<bool>() ? "true" : "false") : py::str(v);
  }
  return config_from(d);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gesture and voice input control engine";

  static py::handle error_type = py::exception<Error>(m, "GesturaError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = error_code_name(e.code());
      exc.attr("exit_code") = exit_code(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def(
      "parse_frame",
      [](const std::string& line) {
        HandFrame f = parse_frame(line);
        py::list lm;
        for (const auto& p : f.lm) lm.append(py::make_tuple(p.x, p.y, p.z));
        py::dict d;
        d["t"] = f.t_ms;
        d["hand"] = handedness_name(f.hand);
        d["lm"] = lm;
        return d;
      },
      py::arg("line"), "Validate one JSONL frame record and return it as a dict.");

  m.def(
      "fingers_up", [](const std::string& line) { return fingers_up(parse_frame(line)).bits(); },
      py::arg("line"), "Finger bits, thumb first, for one frame record.");

  m.def(
      "map_to_screen",
      [](double x, double y, const py::kwargs& kwargs) {
        PixelPoint p = map_to_screen(x, y, config_from_kwargs(kwargs).map);
        return py::make_tuple(p.x, p.y);
      },
      py::arg("x"), py::arg("y"));

  py::class_<PointerState>(m, "Pointer")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_property_readonly("x", &PointerState::x)
      .def_property_readonly("y", &PointerState::y)
      .def(
          "smooth",
          [](PointerState& self, int tx, int ty, const py::kwargs& kwargs) -> py::object {
            auto out = self.smooth({tx, ty}, config_from_kwargs(kwargs).map);
            if (!out) return py::none();
            return py::make_tuple(out->x, out->y);
          },
          py::arg("tx"), py::arg("ty"));

  py::class_<GestureEngine>(m, "GestureEngine")
      .def(py::init([](const py::kwargs& kwargs) {
        return GestureEngine(config_from_kwargs(kwargs).fsm);
      }))
      .def(
          "push", [](GestureEngine& self, const std::string& line) {
            return event_dict(self.push(parse_frame(line)));
          },
          py::arg("line"), "Feed one frame record; returns the gesture event.")
      .def_property_readonly("pose", [](const GestureEngine& self) {
        return pose_name(self.state().pose);
      })
      .def("reset", &GestureEngine::reset);

  m.def(
      "parse_intent", [](const std::string& text) { return intent_dict(parse_intent(text)); },
      py::arg("text"));
  m.def("normalize", &normalize, py::arg("text"));

  m.def(
      "plan_intent",
      [](const std::string& text, std::int64_t t) {
        FixtureWeatherProvider weather;
        MockBackend backend;
        PlanContext ctx;
        ctx.weather = &weather;
        ctx.backend = &backend;
        std::vector<std::string> lines;
        for (const auto& a : intent_to_actions(parse_intent(text), t, ctx)) {
          lines.push_back(action_to_json(a));
        }
        return lines;
      },
      py::arg("text"), py::arg("t") = 1,
      "Action log lines an utterance would produce with the mock backend and stub weather.");

  m.def(
      "synthesize_suite",
      [](double sigma, std::uint64_t seed, int reps, int fps) {
        SuiteParams p;
        p.sigma = sigma;
        p.seed = seed;
        p.reps = reps;
        p.fps = fps;
        Suite s = synthesize_suite(p);
        std::vector<std::string> frames;
        std::vector<std::string> labels;
        for (const auto& f : s.frames) frames.push_back(serialize_frame(f));
        for (const auto& l : s.labels) labels.push_back(serialize_label(l));
        return py::make_tuple(frames, labels);
      },
      py::arg("sigma") = 0.0, py::arg("seed") = 1, py::arg("reps") = 4, py::arg("fps") = 30,
      "Synthetic (frame lines, label lines).");

  m.def(
      "evaluate",
      [](const std::vector<std::string>& frame_lines, const std::vector<std::string>& label_lines,
         const py::kwargs& kwargs) {
        std::vector<HandFrame> frames;
        std::vector<LabeledSegment> labels;
        for (const auto& l : frame_lines) frames.push_back(parse_frame(l));
        for (const auto& l : label_lines) labels.push_back(parse_label(l));
        return report_dict(evaluate(frames, labels, config_from_kwargs(kwargs).fsm));
      },
      py::arg("frames"), py::arg("labels"));

  m.def(
      "replay",
      [](const std::string& frames_path, const std::string& out_path,
         const std::string& utterances_path, const py::dict& overrides) {
        SessionConfig cfg = config_from(overrides);
        auto backend = make_backend(cfg.backend, {cfg.mock_battery_percent, cfg.mock_battery_charging});
        auto weather = make_weather_provider(cfg.weather, cfg.weather_fixtures, cfg.weather_url,
                                             std::chrono::milliseconds(cfg.weather_timeout_ms));
        const RuleTable rules = cfg.rules.empty() ? RuleTable::defaults() : RuleTable::load(cfg.rules);
        const auto utterances =
            utterances_path.empty() ? std::vector<Utterance>{} : load_utterances(utterances_path);
        std::ofstream log(out_path, std::ios::trunc | std::ios::binary);
        if (!log) throw Error(ErrorCode::SourceUnavailable, "cannot write " + out_path);
        FrameStream stream =
            open_stream(SourceSpec{SourceKind::File, frames_path, {}, 0}, GapPolicy::Strict);
        Session session(cfg, *backend, weather.get(), rules, &log);
        SessionMetrics metrics;
        {
          py::gil_scoped_release release;
          metrics = run_replay(stream, utterances, session);
        }
        return metrics.to_json();
      },
      py::arg("frames"), py::arg("out"), py::arg("utterances") = "",
      py::arg("config") = py::dict(), "Replay a frame file; returns metrics JSON.");
}
