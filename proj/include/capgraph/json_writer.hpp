// Hand-rolled JSON emitter for report files: insertion-ordered objects,
// doubles printed with %.17g so values round-trip, infinities as "inf".
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "capgraph/common.hpp"

namespace capgraph {

class JsonValue {
 public:
  enum class Kind { object, array, string, number, boolean, integer };

  static JsonValue object() { return JsonValue(Kind::object); }
  static JsonValue array() { return JsonValue(Kind::array); }
  static JsonValue str(std::string s) {
    JsonValue v(Kind::string);
    v.str_ = std::move(s);
    return v;
  }
  static JsonValue num(double x) {
    JsonValue v(Kind::number);
    v.num_ = x;
    return v;
  }
  static JsonValue boolean(bool b) {
    JsonValue v(Kind::boolean);
    v.bool_ = b;
    return v;
  }
  static JsonValue integer(long long n) {
    JsonValue v(Kind::integer);
    v.int_ = n;
    return v;
  }

  JsonValue& set(const std::string& key, JsonValue v) {
    members_.emplace_back(key, std::move(v));
    return members_.back().second;
  }
  JsonValue& set(const std::string& key, double x) { return set(key, num(x)); }
  JsonValue& set(const std::string& key, const std::string& s) { return set(key, str(s)); }
  JsonValue& set(const std::string& key, const char* s) { return set(key, str(s)); }
  JsonValue& set(const std::string& key, bool b) { return set(key, boolean(b)); }
  JsonValue& set(const std::string& key, int n) { return set(key, integer(n)); }
  JsonValue& set(const std::string& key, long n) { return set(key, integer(n)); }
  JsonValue& push(JsonValue v) {
    items_.push_back(std::move(v));
    return items_.back();
  }

  void write(std::string& out, int indent = 0) const {
    switch (kind_) {
      case Kind::object: {
        if (members_.empty()) {
          out += "{}";
          return;
        }
        out += "{\n";
        for (size_t k = 0; k < members_.size(); ++k) {
          pad(out, indent + 2);
          escape(out, members_[k].first);
          out += ": ";
          members_[k].second.write(out, indent + 2);
          if (k + 1 < members_.size()) out += ',';
          out += '\n';
        }
        pad(out, indent);
        out += '}';
        return;
      }
      case Kind::array: {
        if (items_.empty()) {
          out += "[]";
          return;
        }
        out += "[\n";
        for (size_t k = 0; k < items_.size(); ++k) {
          pad(out, indent + 2);
          items_[k].write(out, indent + 2);
          if (k + 1 < items_.size()) out += ',';
          out += '\n';
        }
        pad(out, indent);
        out += ']';
        return;
      }
      case Kind::string:
        escape(out, str_);
        return;
      case Kind::boolean:
        out += bool_ ? "true" : "false";
        return;
      case Kind::integer:
        out += std::to_string(int_);
        return;
      case Kind::number: {
        if (std::isinf(num_)) {
          out += num_ > 0 ? "\"inf\"" : "\"-inf\"";
          return;
        }
        if (std::isnan(num_)) {
          out += "\"nan\"";
          return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", num_);
        out += buf;
        return;
      }
    }
  }

  std::string dump() const {
    std::string out;
    write(out);
    out += '\n';
    return out;
  }

 private:
  explicit JsonValue(Kind k) : kind_(k) {}
  static void pad(std::string& out, int n) { out.append(static_cast<size_t>(n), ' '); }
  static void escape(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
      switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += ch;
      }
    }
    out += '"';
  }

  Kind kind_;
  std::string str_;
  double num_ = 0.0;
  bool bool_ = false;
  long long int_ = 0;
  std::vector<std::pair<std::string, JsonValue>> members_;
  std::vector<JsonValue> items_;
};

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot open output file: " + path);
  out << content;
  if (!out) throw data_error("failed writing output file: " + path);
}

inline JsonValue report_to_json(const VerificationReport& rep) {
  JsonValue j = JsonValue::object();
  j.set("check", rep.name);
  j.set("value", rep.value);
  j.set("tolerance", rep.tolerance);
  j.set("pass", rep.pass);
  j.set("nodes_evaluated", static_cast<long>(rep.nodes_evaluated));
  JsonValue d = JsonValue::object();
  for (const auto& kv : rep.details) d.set(kv.first, kv.second);
  j.set("details", std::move(d));
  return j;
}

}  // namespace capgraph
