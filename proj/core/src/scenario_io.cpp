#include "beam/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>
#include <variant>
#include <vector>

namespace beam {

namespace {

// ---------------------------------------------------------------------------
// Document model: sections of key = value entries, in file order.
// ---------------------------------------------------------------------------

using Value = std::variant<double, std::string, bool, std::vector<double>>;

struct Entry {
  std::string key;
  Value value;
  int line{0};
};

struct Section {
  std::string name;
  std::vector<Entry> entries;
  int line{0};
};

struct Document {
  std::vector<Section> sections;

  const Section* find(std::string_view name) const {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
  Section& get_or_add(std::string_view name) {
    for (auto& s : sections)
      if (s.name == name) return s;
    sections.push_back(Section{std::string(name), {}, 0});
    return sections.back();
  }
};

const std::vector<std::string_view> kSections = {"domain", "physics",        "damping", "restoring",
                                                 "forcing", "initial",       "time",    "discretization",
                                                 "solver",  "verify",        "output"};

[[noreturn]] void fail(int line, const std::string& msg) {
  if (line > 0) throw ScenarioError("line " + std::to_string(line) + ": " + msg);
  throw ScenarioError(msg);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && in_string) {
      ++i;
      continue;
    }
    if (c == '"') in_string = !in_string;
    if (c == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text)
    if (c != '_') cleaned.push_back(c);  // TOML digit separators
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cleaned.data(), cleaned.data() + cleaned.size(), value);
  if (ec != std::errc{} || ptr != cleaned.data() + cleaned.size()) return std::nullopt;
  return value;
}

std::optional<Value> parse_value(std::string_view text, int line) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '"') {
    std::string out;
    std::size_t i = 1;
    for (; i < text.size() && text[i] != '"'; ++i) {
      if (text[i] == '\\' && i + 1 < text.size()) {
        ++i;
        switch (text[i]) {
          case 'n':
            out.push_back('\n');
            break;
          case 't':
            out.push_back('\t');
            break;
          default:
            out.push_back(text[i]);
        }
      } else {
        out.push_back(text[i]);
      }
    }
    if (i >= text.size()) fail(line, "unterminated string");
    if (!trim(text.substr(i + 1)).empty()) fail(line, "trailing characters after string");
    return Value{out};
  }
  if (text == "true") return Value{true};
  if (text == "false") return Value{false};
  if (text.front() == '[') {
    if (text.back() != ']') fail(line, "unterminated array");
    std::vector<double> values;
    std::string_view body = text.substr(1, text.size() - 2);
    while (!trim(body).empty()) {
      const auto comma = body.find(',');
      const std::string_view item = trim(body.substr(0, comma));
      if (!item.empty()) {
        const auto v = parse_number(item);
        if (!v) fail(line, "array entries must be numbers, got '" + std::string(item) + "'");
        values.push_back(*v);
      } else if (comma != std::string_view::npos) {
        fail(line, "empty array entry");
      }
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return Value{values};
  }
  if (const auto v = parse_number(text)) return Value{*v};
  return std::nullopt;
}

Document parse_document(std::string_view text) {
  Document doc;
  Section* current = nullptr;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (std::find(kSections.begin(), kSections.end(), name) == kSections.end())
        fail(line_no, "unknown section [" + name + "]");
      if (doc.find(name)) fail(line_no, "duplicate section [" + name + "]");
      doc.sections.push_back(Section{name, {}, line_no});
      current = &doc.sections.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    if (!current) fail(line_no, "key outside of a section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) fail(line_no, "empty key");
    std::string value_text(trim(line.substr(eq + 1)));
    const int entry_line = line_no;
    // Arrays may span lines.
    if (!value_text.empty() && value_text.front() == '[') {
      while (value_text.back() != ']') {
        if (!std::getline(in, raw)) fail(entry_line, "unterminated array");
        ++line_no;
        value_text += ' ';
        value_text += trim(strip_comment(raw));
      }
    }
    const auto value = parse_value(value_text, entry_line);
    if (!value) fail(entry_line, "cannot parse value for '" + key + "'");
    for (const auto& e : current->entries)
      if (e.key == key) fail(entry_line, "duplicate key '" + key + "' in [" + current->name + "]");
    current->entries.push_back(Entry{key, *value, entry_line});
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Binding a document onto ScenarioConfig.
// ---------------------------------------------------------------------------

class SectionReader {
 public:
  SectionReader(const Document& doc, std::string_view name) : section_(doc.find(name)), name_(name) {
    if (section_) used_.assign(section_->entries.size(), false);
  }

  std::optional<double> number(std::string_view key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    if (const auto* d = std::get_if<double>(&e->value)) return *d;
    fail(e->line, "'" + std::string(key) + "' in [" + name_ + "] must be a number");
  }

  std::optional<long long> integer(std::string_view key) {
    const Entry* e = peek(key);
    const auto v = number(key);
    if (!v) return std::nullopt;
    if (std::floor(*v) != *v || std::abs(*v) > 9e15)
      fail(e->line, "'" + std::string(key) + "' in [" + name_ + "] must be an integer");
    return static_cast<long long>(*v);
  }

  std::optional<std::string> string(std::string_view key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&e->value)) return *s;
    fail(e->line, "'" + std::string(key) + "' in [" + name_ + "] must be a string");
  }

  std::optional<bool> boolean(std::string_view key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    if (const auto* b = std::get_if<bool>(&e->value)) return *b;
    fail(e->line, "'" + std::string(key) + "' in [" + name_ + "] must be true or false");
  }

  std::optional<std::vector<double>> array(std::string_view key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    if (const auto* a = std::get_if<std::vector<double>>(&e->value)) return *a;
    fail(e->line, "'" + std::string(key) + "' in [" + name_ + "] must be an array of numbers");
  }

  /// Any key not consumed is unknown, or does not apply to the chosen type.
  void finish(const std::string& context = {}) const {
    if (!section_) return;
    for (std::size_t i = 0; i < used_.size(); ++i) {
      if (used_[i]) continue;
      const auto& e = section_->entries[i];
      fail(e.line, "unknown key '" + e.key + "' in [" + name_ + "]" + context);
    }
  }

  int line() const { return section_ ? section_->line : 0; }

 private:
  const Entry* peek(std::string_view key) const {
    if (!section_) return nullptr;
    for (const auto& e : section_->entries)
      if (e.key == key) return &e;
    return nullptr;
  }
  const Entry* take(std::string_view key) {
    if (!section_) return nullptr;
    for (std::size_t i = 0; i < section_->entries.size(); ++i)
      if (section_->entries[i].key == key) {
        used_[i] = true;
        return &section_->entries[i];
      }
    return nullptr;
  }

  const Section* section_;
  std::string name_;
  std::vector<bool> used_;
};

SpatialField read_field(SectionReader& r, const std::string& prefix, const SpatialField& fallback) {
  const auto type = r.string(prefix + "type");
  SpatialField field = fallback;
  std::string kind;
  if (type) {
    kind = *type;
  } else {
    kind = std::holds_alternative<ZeroField>(fallback) ? "zero"
           : std::holds_alternative<SineMode>(fallback) ? "sine"
                                                        : "samples";
  }
  if (kind == "zero") {
    field = ZeroField{};
  } else if (kind == "sine") {
    SineMode m = std::holds_alternative<SineMode>(fallback) && !type ? std::get<SineMode>(fallback) : SineMode{};
    if (const auto v = r.number(prefix + "amplitude")) m.amplitude = *v;
    if (const auto v = r.integer(prefix + "mode")) m.mode = static_cast<int>(*v);
    field = m;
  } else if (kind == "samples") {
    const auto values = r.array(prefix + "values");
    if (!values) fail(r.line(), "'" + prefix + "values' is required for type = \"samples\"");
    field = NodalSamples{*values};
  } else {
    fail(r.line(), "unknown " + prefix + "type '" + kind + "' (expected zero, sine or samples)");
  }
  return field;
}

ScenarioConfig bind(const Document& doc) {
  ScenarioConfig cfg;
  BeamScenario& s = cfg.scenario;

  {
    SectionReader r(doc, "domain");
    if (const auto v = r.number("a")) s.a = *v;
    if (const auto v = r.number("b")) s.b = *v;
    r.finish();
  }
  {
    SectionReader r(doc, "physics");
    if (const auto v = r.number("m")) s.mass = *v;
    if (const auto v = r.number("sigma")) s.rigidity = *v;
    r.finish();
  }
  {
    SectionReader r(doc, "damping");
    const std::string type = r.string("type").value_or("linear_quadratic");
    if (type == "linear_quadratic") {
      LinearPlusQuadratic l;
      if (const auto v = r.number("c")) l.c = *v;
      if (const auto v = r.number("d")) l.d = *v;
      s.damping = l;
    } else if (type == "power") {
      PowerLaw l;
      if (const auto v = r.number("delta")) l.delta = *v;
      if (const auto v = r.number("p")) l.p = *v;
      s.damping = l;
    } else {
      fail(r.line(), "unknown damping type '" + type + "' (expected linear_quadratic or power)");
    }
    r.finish(" for type = \"" + type + "\"");
  }
  {
    SectionReader r(doc, "restoring");
    const std::string type = r.string("type").value_or("cubic");
    if (type == "zero") {
      s.restoring = ZeroRestoring{};
    } else if (type == "linear") {
      LinearRestoring l;
      if (const auto v = r.number("kappa")) l.kappa = *v;
      s.restoring = l;
    } else if (type == "cubic") {
      CubicRestoring l;
      if (const auto v = r.number("kappa")) l.kappa = *v;
      s.restoring = l;
    } else if (type == "smoothed_one_sided") {
      SmoothedOneSided l;
      if (const auto v = r.number("kappa")) l.kappa = *v;
      if (const auto v = r.number("eps")) l.eps = *v;
      s.restoring = l;
    } else {
      fail(r.line(), "unknown restoring type '" + type + "' (expected zero, linear, cubic or smoothed_one_sided)");
    }
    r.finish(" for type = \"" + type + "\"");
  }
  {
    SectionReader r(doc, "forcing");
    s.forcing = read_field(r, "", s.forcing);
    r.finish();
  }
  {
    SectionReader r(doc, "initial");
    s.u0 = read_field(r, "u0_", s.u0);
    s.u1 = read_field(r, "u1_", s.u1);
    r.finish();
  }
  {
    SectionReader r(doc, "time");
    if (const auto v = r.number("dt")) s.dt = *v;
    if (const auto v = r.number("t_end")) s.t_end = *v;
    r.finish();
  }
  {
    SectionReader r(doc, "discretization");
    if (const auto v = r.string("scheme")) {
      try {
        cfg.discretization.scheme = scheme_from_string(*v);
      } catch (const std::invalid_argument& e) {
        fail(r.line(), e.what());
      }
    }
    if (const auto v = r.integer("n")) {
      if (*v < 3) fail(r.line(), "discretization.n must be at least 3");
      cfg.discretization.n = static_cast<std::size_t>(*v);
    }
    r.finish();
  }
  {
    SectionReader r(doc, "solver");
    if (const auto v = r.number("newton_tol")) cfg.solver.newton_tol = *v;
    if (const auto v = r.integer("newton_max_iter")) cfg.solver.newton_max_iter = static_cast<int>(*v);
    if (const auto v = r.number("stationary_tol")) cfg.solver.stationary_tol = *v;
    if (const auto v = r.integer("stationary_max_iter")) cfg.solver.stationary_max_iter = static_cast<int>(*v);
    r.finish();
    if (!(cfg.solver.newton_tol > 0.0) || !(cfg.solver.stationary_tol > 0.0))
      fail(r.line(), "solver tolerances must be positive");
    if (cfg.solver.newton_max_iter < 1 || cfg.solver.stationary_max_iter < 1)
      fail(r.line(), "solver iteration limits must be at least 1");
  }
  {
    SectionReader r(doc, "verify");
    if (const auto v = r.number("gap_tol")) cfg.verify.gap_tol = *v;
    if (const auto v = r.number("v_tol")) cfg.verify.v_tol = *v;
    if (const auto v = r.number("window")) cfg.verify.window = *v;
    if (const auto v = r.number("sigma_gap_tol")) cfg.verify.sigma_gap_tol = *v;
    r.finish();
  }
  {
    SectionReader r(doc, "output");
    if (const auto v = r.integer("snapshot_stride")) {
      if (*v < 1) fail(r.line(), "output.snapshot_stride must be at least 1");
      cfg.output.snapshot_stride = static_cast<std::size_t>(*v);
    }
    if (const auto v = r.integer("csv_stride")) {
      if (*v < 1) fail(r.line(), "output.csv_stride must be at least 1");
      cfg.output.csv_stride = static_cast<std::size_t>(*v);
    }
    if (const auto v = r.boolean("plots")) cfg.output.plots = *v;
    if (const auto v = r.boolean("snapshots")) cfg.output.snapshots = *v;
    r.finish();
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Canonical writer.
// ---------------------------------------------------------------------------

void put(Section& s, std::string key, Value v) { s.entries.push_back(Entry{std::move(key), std::move(v), 0}); }

void put_field(Section& s, const std::string& prefix, const SpatialField& field) {
  if (std::holds_alternative<ZeroField>(field)) {
    put(s, prefix + "type", std::string("zero"));
  } else if (const auto* m = std::get_if<SineMode>(&field)) {
    put(s, prefix + "type", std::string("sine"));
    put(s, prefix + "amplitude", m->amplitude);
    put(s, prefix + "mode", static_cast<double>(m->mode));
  } else if (const auto* v = std::get_if<NodalSamples>(&field)) {
    put(s, prefix + "type", std::string("samples"));
    put(s, prefix + "values", v->values);
  }
}

Document to_document(const ScenarioConfig& cfg) {
  const BeamScenario& sc = cfg.scenario;
  Document doc;
  {
    auto& s = doc.get_or_add("domain");
    put(s, "a", sc.a);
    put(s, "b", sc.b);
  }
  {
    auto& s = doc.get_or_add("physics");
    put(s, "m", sc.mass);
    put(s, "sigma", sc.rigidity);
  }
  {
    auto& s = doc.get_or_add("damping");
    if (const auto* l = std::get_if<LinearPlusQuadratic>(&sc.damping)) {
      put(s, "type", std::string("linear_quadratic"));
      put(s, "c", l->c);
      put(s, "d", l->d);
    } else if (const auto* p = std::get_if<PowerLaw>(&sc.damping)) {
      put(s, "type", std::string("power"));
      put(s, "delta", p->delta);
      put(s, "p", p->p);
    }
  }
  {
    auto& s = doc.get_or_add("restoring");
    if (std::holds_alternative<ZeroRestoring>(sc.restoring)) {
      put(s, "type", std::string("zero"));
    } else if (const auto* l = std::get_if<LinearRestoring>(&sc.restoring)) {
      put(s, "type", std::string("linear"));
      put(s, "kappa", l->kappa);
    } else if (const auto* c = std::get_if<CubicRestoring>(&sc.restoring)) {
      put(s, "type", std::string("cubic"));
      put(s, "kappa", c->kappa);
    } else if (const auto* o = std::get_if<SmoothedOneSided>(&sc.restoring)) {
      put(s, "type", std::string("smoothed_one_sided"));
      put(s, "kappa", o->kappa);
      put(s, "eps", o->eps);
    }
  }
  put_field(doc.get_or_add("forcing"), "", sc.forcing);
  {
    auto& s = doc.get_or_add("initial");
    put_field(s, "u0_", sc.u0);
    put_field(s, "u1_", sc.u1);
  }
  {
    auto& s = doc.get_or_add("time");
    put(s, "dt", sc.dt);
    put(s, "t_end", sc.t_end);
  }
  {
    auto& s = doc.get_or_add("discretization");
    put(s, "scheme", to_string(cfg.discretization.scheme));
    put(s, "n", static_cast<double>(cfg.discretization.n));
  }
  {
    auto& s = doc.get_or_add("solver");
    put(s, "newton_tol", cfg.solver.newton_tol);
    put(s, "newton_max_iter", static_cast<double>(cfg.solver.newton_max_iter));
    put(s, "stationary_tol", cfg.solver.stationary_tol);
    put(s, "stationary_max_iter", static_cast<double>(cfg.solver.stationary_max_iter));
  }
  {
    auto& s = doc.get_or_add("verify");
    put(s, "gap_tol", cfg.verify.gap_tol);
    put(s, "v_tol", cfg.verify.v_tol);
    put(s, "window", cfg.verify.window);
    put(s, "sigma_gap_tol", cfg.verify.sigma_gap_tol);
  }
  {
    auto& s = doc.get_or_add("output");
    put(s, "snapshot_stride", static_cast<double>(cfg.output.snapshot_stride));
    put(s, "csv_stride", static_cast<double>(cfg.output.csv_stride));
    put(s, "plots", cfg.output.plots);
    put(s, "snapshots", cfg.output.snapshots);
  }
  return doc;
}

std::string format_number(double x) {
  char buf[64];
  // Shortest representation that round-trips exactly.
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string format_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* s = std::get_if<std::string>(&v)) {
    std::string out = "\"";
    for (char c : *s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    return out + "\"";
  }
  const auto& a = std::get<std::vector<double>>(v);
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ", ";
    out += format_number(a[i]);
  }
  return out + "]";
}

std::string render(const Document& doc) {
  std::string out;
  for (const auto& s : doc.sections) {
    if (!out.empty()) out += '\n';
    out += "[" + s.name + "]\n";
    for (const auto& e : s.entries) out += e.key + " = " + format_value(e.value) + "\n";
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

bool operator==(const ScenarioConfig& l, const ScenarioConfig& r) {
  return l.scenario == r.scenario && l.discretization.scheme == r.discretization.scheme &&
         l.discretization.n == r.discretization.n && l.solver.newton_tol == r.solver.newton_tol &&
         l.solver.newton_max_iter == r.solver.newton_max_iter &&
         l.solver.stationary_tol == r.solver.stationary_tol &&
         l.solver.stationary_max_iter == r.solver.stationary_max_iter && l.verify.gap_tol == r.verify.gap_tol &&
         l.verify.v_tol == r.verify.v_tol && l.verify.window == r.verify.window &&
         l.verify.sigma_gap_tol == r.verify.sigma_gap_tol &&
         l.output.snapshot_stride == r.output.snapshot_stride && l.output.csv_stride == r.output.csv_stride &&
         l.output.plots == r.output.plots && l.output.snapshots == r.output.snapshots;
}

ScenarioConfig parse_scenario(std::string_view text) { return bind(parse_document(text)); }

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::filesystem::filesystem_error("cannot open scenario file", path,
                                            std::make_error_code(std::errc::no_such_file_or_directory));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

std::string write_scenario(const ScenarioConfig& config) { return render(to_document(config)); }

void set_parameter(ScenarioConfig& config, std::string_view dotted_key, std::string_view value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == dotted_key.size())
    throw ScenarioError("parameter '" + std::string(dotted_key) + "' must look like section.key");
  const std::string section(dotted_key.substr(0, dot));
  const std::string key(dotted_key.substr(dot + 1));
  if (std::find(kSections.begin(), kSections.end(), section) == kSections.end())
    throw ScenarioError("unknown section [" + section + "] in parameter '" + std::string(dotted_key) + "'");

  Document doc = to_document(config);
  Value parsed = std::string(trim(value));
  if (const auto v = parse_value(value, 0)) parsed = *v;
  auto& s = doc.get_or_add(section);
  auto it = std::find_if(s.entries.begin(), s.entries.end(), [&](const Entry& e) { return e.key == key; });
  if (it != s.entries.end())
    it->value = parsed;
  else
    s.entries.push_back(Entry{key, parsed, 0});
  config = bind(doc);
}

Discretization make_discretization(const ScenarioConfig& config) {
  return Discretization(config.scenario.a, config.scenario.b, config.discretization.n, config.discretization.scheme);
}

BeamProblem make_problem(const ScenarioConfig& config) {
  return BeamProblem(config.scenario, make_discretization(config));
}

RunOptions make_run_options(const ScenarioConfig& config) {
  RunOptions o;
  o.newton.tol = config.solver.newton_tol;
  o.newton.max_iter = config.solver.newton_max_iter;
  o.snapshot_stride = config.output.snapshot_stride;
  return o;
}

StationaryOptions make_stationary_options(const ScenarioConfig& config) {
  return StationaryOptions{config.solver.stationary_tol, config.solver.stationary_max_iter};
}

}  // namespace beam
