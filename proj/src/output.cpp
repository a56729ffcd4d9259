#include "hybrid_centers/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hc {

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string quote(const std::string& s) { return nlohmann::ordered_json(s).dump(); }

void write_json(std::ostream& os, const nlohmann::ordered_json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * depth + 2), ' ');
  switch (v.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      std::size_t i = 0;
      for (const auto& [k, item] : v.items()) {
        os << inner << quote(k) << ": ";
        write_json(os, item, depth + 1);
        os << (++i < v.size() ? ",\n" : "\n");
      }
      os << pad << "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      // Short arrays of scalars stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const auto& e) { return e.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) os << ", ";
          write_json(os, v[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << inner;
        write_json(os, v[i], depth + 1);
        os << (i + 1 < v.size() ? ",\n" : "\n");
      }
      os << pad << "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: os << format_double(v.get<double>()); return;
    default: os << v.dump(); return;
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::ordered_json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

std::string to_json_text(const nlohmann::ordered_json& value) {
  std::ostringstream os;
  write_json(os, value, 0);
  os << "\n";
  return os.str();
}

SvgPlot::SvgPlot(double xmin, double xmax, double ymin, double ymax, int width, int height)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), width_(width), height_(height) {
  if (!(xmax_ > xmin_)) xmax_ = xmin_ + 1.0;
  if (!(ymax_ > ymin_)) ymax_ = ymin_ + 1.0;
}

double SvgPlot::sx(double x) const { return 20.0 + (width_ - 40.0) * (x - xmin_) / (xmax_ - xmin_); }
double SvgPlot::sy(double y) const { return height_ - 20.0 - (height_ - 40.0) * (y - ymin_) / (ymax_ - ymin_); }

void SvgPlot::polyline(const std::vector<PlanePoint>& pts, const std::string& stroke, double width, bool dashed) {
  std::string d;
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    d += fixed(sx(p.x), 2) + "," + fixed(sy(p.y), 2) + " ";
  }
  items_.push_back("<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + fixed(width, 2) + "\"" +
                   (dashed ? " stroke-dasharray=\"4 3\"" : "") + " points=\"" + d + "\"/>");
}

void SvgPlot::line(PlanePoint a, PlanePoint b, const std::string& stroke, double width, bool dashed) {
  polyline({a, b}, stroke, width, dashed);
}

void SvgPlot::dot(PlanePoint p, const std::string& fill, double radius) {
  items_.push_back("<circle cx=\"" + fixed(sx(p.x), 2) + "\" cy=\"" + fixed(sy(p.y), 2) + "\" r=\"" +
                   fixed(radius, 1) + "\" fill=\"" + fill + "\"/>");
}

void SvgPlot::text(PlanePoint p, const std::string& s) {
  items_.push_back("<text x=\"" + fixed(sx(p.x), 2) + "\" y=\"" + fixed(sy(p.y), 2) +
                   "\" font-family=\"sans-serif\" font-size=\"12\">" + s + "</text>");
}

void SvgPlot::write(std::ostream& os) const {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_
     << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& s : items_) os << s << "\n";
  os << "</svg>\n";
}

}  // namespace hc
