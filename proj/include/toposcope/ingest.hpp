#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toposcope/error.hpp"
#include "toposcope/graph.hpp"

namespace toposcope {

enum class InputFormat { edgelist, graphml };
enum class RangePolicy { min, max, mean };

struct IngestConfig {
  std::optional<InputFormat> format;  // unset: chosen from the file extension
  std::string capacity_key = "LinkSpeed";
  std::string unit_key = "LinkSpeedUnits";
  RangePolicy range_policy = RangePolicy::mean;
  double default_capacity = 1.0;
  bool extract_gcc = true;
};

struct IngestReport {
  std::size_t nodes_read = 0;
  std::size_t edges_read = 0;
  std::size_t multi_edges_collapsed = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t nodes_outside_gcc = 0;
  std::size_t capacity_defaults_applied = 0;
};

struct Ingested {
  Topology topology;
  IngestReport report;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

inline void check_config(const IngestConfig& cfg) {
  if (!(cfg.default_capacity > 0.0)) throw InputError("default capacity must be > 0");
}

inline Ingested finish(const TopologyBuilder& builder, bool capacitated, const IngestConfig& cfg,
                       IngestReport report) {
  if (builder.node_count() == 0) throw InputError("empty topology");
  report.nodes_read = builder.node_count();
  report.multi_edges_collapsed = builder.multi_edges_collapsed();
  report.self_loops_dropped = builder.self_loops_dropped();
  Topology g = builder.build(capacitated);
  if (cfg.extract_gcc) {
    g = extract_gcc(g);
    report.nodes_outside_gcc = report.nodes_read - g.size();
  }
  return {std::move(g), report};
}

}  // namespace detail

/// Whitespace-separated "u v [capacity]" lines; '#' starts a comment. Labels
/// get dense ids in order of first appearance. The topology is capacitated
/// when any line carries a capacity, and lines without one then receive the
/// default capacity.
inline Ingested parse_edgelist(std::string_view text, const IngestConfig& cfg = {}) {
  detail::check_config(cfg);
  struct Line {
    std::string a, b;
    std::optional<double> capacity;
  };
  std::vector<Line> lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::vector<std::string_view> tokens;
    for (std::size_t i = 0; i < raw.size();) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) tokens.push_back(raw.substr(start, i - start));
    }
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 3)
      throw InputError("line " + std::to_string(line_no) + ": expected 'u v [capacity]'");
    Line line{std::string(tokens[0]), std::string(tokens[1]), std::nullopt};
    if (tokens.size() == 3) {
      const auto cap = detail::parse_number(tokens[2]);
      if (!cap || !std::isfinite(*cap))
        throw InputError("line " + std::to_string(line_no) + ": malformed capacity '" +
                         std::string(tokens[2]) + "'");
      if (*cap <= 0.0)
        throw InputError("line " + std::to_string(line_no) + ": capacity must be > 0");
      line.capacity = cap;
    }
    lines.push_back(std::move(line));
  }
  if (lines.empty()) throw InputError("empty topology: no edges found");

  bool capacitated = false;
  for (const auto& l : lines) capacitated = capacitated || l.capacity.has_value();

  IngestReport report;
  TopologyBuilder builder;
  for (const auto& l : lines) {
    double cap = 1.0;
    if (capacitated) {
      if (l.capacity) {
        cap = *l.capacity;
      } else {
        cap = cfg.default_capacity;
        if (l.a != l.b) ++report.capacity_defaults_applied;
      }
    }
    builder.add_edge(l.a, l.b, cap);
    ++report.edges_read;
  }
  return detail::finish(builder, capacitated, cfg, report);
}

/// Edge-list text that parse_edgelist reads back to the same topology.
inline std::string write_edgelist(const Topology& g) {
  std::string out;
  char buf[64];
  g.for_each_edge([&](NodeId u, NodeId v, double cap) {
    out += g.label(u);
    out += ' ';
    out += g.label(v);
    if (g.capacitated()) {
      std::snprintf(buf, sizeof buf, " %.17g", cap);
      out += buf;
    }
    out += '\n';
  });
  return out;
}

namespace detail {

/// Streaming reader for the XML subset found in GraphML files: elements,
/// attributes, character data, comments, processing instructions, CDATA and
/// DOCTYPE declarations. Namespace prefixes are stripped from element names.
class XmlReader {
 public:
  struct Handler {
    virtual ~Handler() = default;
    virtual void open(std::string_view name, const std::map<std::string, std::string>& attrs) = 0;
    virtual void close(std::string_view name) = 0;
    virtual void text(std::string_view chars) = 0;
  };

  explicit XmlReader(std::string_view doc) : doc_(doc) {}

  void run(Handler& h) {
    std::vector<std::string> stack;
    bool seen_root = false;
    while (pos_ < doc_.size()) {
      if (doc_[pos_] != '<') {
        const auto next = doc_.find('<', pos_);
        const auto chunk = doc_.substr(pos_, next == std::string_view::npos ? std::string_view::npos : next - pos_);
        if (stack.empty()) {
          if (!trim(chunk).empty()) fail("character data outside the root element");
        } else {
          h.text(decode(chunk));
        }
        pos_ = next == std::string_view::npos ? doc_.size() : next;
        continue;
      }
      if (starts("<!--")) {
        skip_past("-->", "unterminated comment");
      } else if (starts("<?")) {
        skip_past("?>", "unterminated processing instruction");
      } else if (starts("<![CDATA[")) {
        const std::size_t begin = pos_ + 9;
        skip_past("]]>", "unterminated CDATA section");
        if (stack.empty()) fail("CDATA outside the root element");
        h.text(doc_.substr(begin, pos_ - 3 - begin));
      } else if (starts("<!")) {
        skip_declaration();
      } else if (starts("</")) {
        pos_ += 2;
        const std::string name = read_name();
        skip_space();
        expect('>');
        if (stack.empty() || stack.back() != name) fail("mismatched closing tag </" + name + ">");
        stack.pop_back();
        h.close(local(name));
      } else {
        ++pos_;
        const std::string name = read_name();
        if (stack.empty() && seen_root) fail("multiple root elements");
        std::map<std::string, std::string> attrs;
        bool self_closing = false;
        while (true) {
          skip_space();
          if (pos_ >= doc_.size()) fail("unterminated tag <" + name + ">");
          if (doc_[pos_] == '>') {
            ++pos_;
            break;
          }
          if (starts("/>")) {
            pos_ += 2;
            self_closing = true;
            break;
          }
          const std::string key = read_name();
          skip_space();
          expect('=');
          skip_space();
          if (pos_ >= doc_.size() || (doc_[pos_] != '"' && doc_[pos_] != '\'')) fail("expected quoted attribute value");
          const char quote = doc_[pos_++];
          const auto end = doc_.find(quote, pos_);
          if (end == std::string_view::npos) fail("unterminated attribute value");
          attrs[std::string(local(key))] = decode(doc_.substr(pos_, end - pos_));
          pos_ = end + 1;
        }
        seen_root = true;
        h.open(local(name), attrs);
        if (self_closing)
          h.close(local(name));
        else
          stack.push_back(name);
      }
    }
    if (!stack.empty()) fail("unclosed element <" + stack.back() + ">");
    if (!seen_root) fail("no root element");
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("malformed XML at byte " + std::to_string(pos_) + ": " + what);
  }

  bool starts(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

  void skip_past(std::string_view terminator, const char* error) {
    const auto end = doc_.find(terminator, pos_);
    if (end == std::string_view::npos) fail(error);
    pos_ = end + terminator.size();
  }

  void skip_declaration() {
    int depth = 0;
    for (; pos_ < doc_.size(); ++pos_) {
      if (doc_[pos_] == '<') ++depth;
      if (doc_[pos_] == '>' && --depth == 0) {
        ++pos_;
        return;
      }
    }
    fail("unterminated declaration");
  }

  void skip_space() {
    while (pos_ < doc_.size() && std::isspace(static_cast<unsigned char>(doc_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= doc_.size() || doc_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string read_name() {
    const std::size_t start = pos_;
    while (pos_ < doc_.size()) {
      const auto ch = static_cast<unsigned char>(doc_[pos_]);
      if (std::isalnum(ch) || ch == '_' || ch == ':' || ch == '-' || ch == '.' || ch >= 0x80)
        ++pos_;
      else
        break;
    }
    if (pos_ == start) fail("expected a name");
    return std::string(doc_.substr(start, pos_ - start));
  }

  static std::string_view local(std::string_view name) {
    const auto colon = name.rfind(':');
    return colon == std::string_view::npos ? name : name.substr(colon + 1);
  }

  std::string decode(std::string_view raw) const {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      const auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity reference");
      const auto entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "amp") out += '&';
      else if (entity == "lt") out += '<';
      else if (entity == "gt") out += '>';
      else if (entity == "quot") out += '"';
      else if (entity == "apos") out += '\'';
      else if (!entity.empty() && entity[0] == '#') {
        unsigned long code = 0;
        const bool hex = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X');
        const auto digits = entity.substr(hex ? 2 : 1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), code, hex ? 16 : 10);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("bad character reference");
        append_utf8(out, code);
      } else {
        fail("unknown entity &" + std::string(entity) + ";");
      }
      i = semi;
    }
    return out;
  }

  static void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

inline double unit_multiplier(std::string_view unit) {
  unit = trim(unit);
  if (unit.empty()) return 1.0;
  if (unit.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(unit[0]))) {
      case 'G': return 1e9;
      case 'M': return 1e6;
      case 'K': return 1e3;
      default: break;
    }
  }
  throw InputError("unknown capacity unit '" + std::string(unit) + "'");
}

/// Numeric capacity, or a "lo-hi" range resolved by `policy`.
inline double resolve_capacity(std::string_view value, RangePolicy policy) {
  value = trim(value);
  std::size_t dash = std::string_view::npos;
  for (std::size_t i = 1; i < value.size(); ++i) {
    if (value[i] == '-' && value[i - 1] != 'e' && value[i - 1] != 'E') {
      dash = i;
      break;
    }
  }
  if (dash == std::string_view::npos) {
    const auto v = parse_number(value);
    if (!v) throw InputError("malformed capacity '" + std::string(value) + "'");
    return *v;
  }
  const auto lo = parse_number(value.substr(0, dash));
  const auto hi = parse_number(value.substr(dash + 1));
  if (!lo || !hi) throw InputError("malformed capacity range '" + std::string(value) + "'");
  switch (policy) {
    case RangePolicy::min: return std::min(*lo, *hi);
    case RangePolicy::max: return std::max(*lo, *hi);
    case RangePolicy::mean: return 0.5 * (*lo + *hi);
  }
  return *lo;
}

class GraphmlCollector : public XmlReader::Handler {
 public:
  struct EdgeRecord {
    std::string id, source, target;
    std::map<std::string, std::string> data;  // keyed by attr.name when declared
  };

  std::vector<std::string> nodes;
  std::vector<EdgeRecord> edges;

  void open(std::string_view name, const std::map<std::string, std::string>& attrs) override {
    auto get = [&](const char* key) {
      auto it = attrs.find(key);
      return it == attrs.end() ? std::string() : it->second;
    };
    if (name == "key") {
      const std::string id = get("id");
      const std::string attr_name = get("attr.name");
      if (!id.empty()) key_names_[id] = attr_name.empty() ? id : attr_name;
    } else if (name == "node") {
      nodes.push_back(get("id"));
    } else if (name == "edge") {
      EdgeRecord e{get("id"), get("source"), get("target"), {}};
      if (e.id.empty()) e.id = "#" + std::to_string(edges.size());
      edges.push_back(std::move(e));
      in_edge_ = true;
    } else if (name == "data" && in_edge_) {
      data_key_ = get("key");
      data_text_.clear();
      in_data_ = true;
    }
  }

  void close(std::string_view name) override {
    if (name == "edge") {
      in_edge_ = false;
    } else if (name == "data" && in_data_) {
      auto it = key_names_.find(data_key_);
      const std::string key = it == key_names_.end() ? data_key_ : it->second;
      edges.back().data[key] = data_text_;
      in_data_ = false;
    }
  }

  void text(std::string_view chars) override {
    if (in_data_) data_text_ += chars;
  }

 private:
  std::map<std::string, std::string> key_names_;
  bool in_edge_ = false;
  bool in_data_ = false;
  std::string data_key_;
  std::string data_text_;
};

}  // namespace detail

/// GraphML subset: <key>, <node id>, <edge source target> and the edges'
/// <data key> children. Data keys match either the key id or its
/// attr.name. Capacity = value under capacity_key times the multiplier of
/// the unit under unit_key (G, M, K or none); edges without a capacity get
/// the default. GraphML topologies are always capacitated.
inline Ingested parse_graphml(std::string_view text, const IngestConfig& cfg = {}) {
  detail::check_config(cfg);
  detail::GraphmlCollector doc;
  detail::XmlReader(text).run(doc);

  IngestReport report;
  TopologyBuilder builder;
  for (const auto& id : doc.nodes) builder.node(id);
  const std::size_t declared = builder.node_count();

  for (const auto& e : doc.edges) {
    for (const auto* end : {&e.source, &e.target}) {
      const NodeId id = builder.node(*end);
      if (id >= declared)
        throw InputError("edge " + e.id + " (" + e.source + " -> " + e.target +
                         ") references undeclared node '" + *end + "'");
    }
    double cap = cfg.default_capacity;
    const auto it = e.data.find(cfg.capacity_key);
    if (it != e.data.end() && !detail::trim(it->second).empty()) {
      const auto unit = e.data.find(cfg.unit_key);
      cap = detail::resolve_capacity(it->second, cfg.range_policy) *
            detail::unit_multiplier(unit == e.data.end() ? std::string_view{} : unit->second);
      if (!(cap > 0.0) || !std::isfinite(cap))
        throw InputError("edge " + e.id + ": capacity must be finite and > 0");
    } else if (e.source != e.target) {
      ++report.capacity_defaults_applied;
    }
    builder.add_edge(e.source, e.target, cap);
    ++report.edges_read;
  }
  return detail::finish(builder, true, cfg, report);
}

inline InputFormat format_for_path(const std::string& path) {
  auto ends_with = [&](std::string_view suffix) {
    if (path.size() < suffix.size()) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(path[path.size() - suffix.size() + i])) != suffix[i])
        return false;
    return true;
  };
  return ends_with(".graphml") || ends_with(".xml") ? InputFormat::graphml : InputFormat::edgelist;
}

inline Ingested ingest_file(const std::string& path, const IngestConfig& cfg = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const InputFormat fmt = cfg.format.value_or(format_for_path(path));
  try {
    return fmt == InputFormat::graphml ? parse_graphml(text, cfg) : parse_edgelist(text, cfg);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace toposcope
