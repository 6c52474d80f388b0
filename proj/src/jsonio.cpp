#include "uncert/jsonio.hpp"

#include <cstdio>
#include <sstream>

namespace uncert {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

void dump_value(const Json& j, std::ostringstream& out, int indent,
                int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1),
                           ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad_in << Json(it.key()).dump() << ": ";
        dump_value(it.value(), out, indent, depth + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& item : j) {
        if (!first) out << ",\n";
        first = false;
        out << pad_in;
        dump_value(item, out, indent, depth + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream out;
  dump_value(j, out, indent, 0);
  out << "\n";
  return out.str();
}

}  // namespace uncert
