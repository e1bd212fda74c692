#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace dsim::cli {

/// Streaming JSON writer that emits keys in call order and prints every
/// float with %.17g, so identical inputs produce byte-identical output.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  void begin_object() {
    separator();
    out_ << "{";
    fresh_.push_back(true);
  }
  void end_object() {
    fresh_.pop_back();
    out_ << "}";
  }
  void begin_array() {
    separator();
    out_ << "[";
    fresh_.push_back(true);
  }
  void end_array() {
    fresh_.pop_back();
    out_ << "]";
  }

  void key(const std::string& name) {
    separator();
    write_string(name);
    out_ << ":";
    pending_value_ = true;
  }

  void number(double value) {
    separator();
    if (!std::isfinite(value)) {
      out_ << "null";
      return;
    }
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    out_ << buffer;
  }
  void integer(long long value) {
    separator();
    out_ << value;
  }
  void string(const std::string& value) {
    separator();
    write_string(value);
  }
  void boolean(bool value) {
    separator();
    out_ << (value ? "true" : "false");
  }
  void null() {
    separator();
    out_ << "null";
  }

 private:
  void separator() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!fresh_.empty()) {
      if (!fresh_.back()) out_ << ",";
      fresh_.back() = false;
    }
  }

  void write_string(const std::string& s) {
    out_ << '"';
    for (char ch : s) {
      switch (ch) {
        case '"': out_ << "\\\""; break;
        case '\\': out_ << "\\\\"; break;
        case '\n': out_ << "\\n"; break;
        case '\t': out_ << "\\t"; break;
        case '\r': out_ << "\\r"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buffer[8];
            std::snprintf(buffer, sizeof(buffer), "\\u%04x", ch);
            out_ << buffer;
          } else {
            out_ << ch;
          }
      }
    }
    out_ << '"';
  }

  std::ostream& out_;
  std::vector<bool> fresh_;
  bool pending_value_ = false;
};

}  // namespace dsim::cli
