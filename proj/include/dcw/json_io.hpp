#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dcw {

// Minimal streaming JSON writer with caller-controlled key order and all
// floating-point values printed with 17 significant digits, so emitted
// numbers round-trip to the exact double and byte-identical reruns are
// byte-identical outputs. Non-finite doubles are emitted as null.
class JsonWriter {
public:
  std::string str() const { return out_; }

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);

  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const char* v);
  JsonWriter& value(const std::string& v);
  JsonWriter& null_value();

  template <typename T>
  JsonWriter& field(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

private:
  void separator();
  void escape_into(const std::string& s);

  std::string out_;
  std::vector<bool> need_comma_; // per nesting level
  bool pending_key_ = false;
};

std::string format_double_17(double v);

} // namespace dcw
