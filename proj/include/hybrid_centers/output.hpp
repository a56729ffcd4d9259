#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hybrid_centers/core_model.hpp"
#include "json.hpp"

namespace hc {

/// 17 significant digits; infinities as "inf" / "-inf".
std::string format_double(double x);

/// A number, or the strings "inf" / "-inf" / "nan" for non-finite values.
nlohmann::ordered_json json_number(double x);

/// Deterministic JSON text: floats at 17 significant digits, two-space indent.
std::string to_json_text(const nlohmann::ordered_json& value);

/// Minimal SVG writer in data coordinates.
class SvgPlot {
 public:
  SvgPlot(double xmin, double xmax, double ymin, double ymax, int width = 640, int height = 640);
  void polyline(const std::vector<PlanePoint>& pts, const std::string& stroke, double width = 1.5,
                bool dashed = false);
  void line(PlanePoint a, PlanePoint b, const std::string& stroke, double width = 1.0, bool dashed = false);
  void dot(PlanePoint p, const std::string& fill, double radius = 3.0);
  void text(PlanePoint p, const std::string& s);
  void write(std::ostream& os) const;

 private:
  double sx(double x) const;
  double sy(double y) const;
  double xmin_, xmax_, ymin_, ymax_;
  int width_, height_;
  std::vector<std::string> items_;
};

}  // namespace hc
