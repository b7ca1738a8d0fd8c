#include <cstdio>
#include <ostream>
#include <string>

#include "bellfacts/cli.hpp"

namespace bellfacts::cli {

namespace {

constexpr double kLeft = 80.0;
constexpr double kTop = 40.0;
constexpr double kSide = 520.0;
constexpr double kWidth = 640.0;
constexpr double kHeight = 640.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

double px(double f3) { return kLeft + kSide * f3; }
double py(double f2) { return kTop + kSide * (1.0 - f2); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_facts_plot_svg(std::ostream& out,
                          const std::vector<SweepRecord>& classical,
                          const std::vector<LabeledFacts>& states) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
      << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth)
      << ' ' << num(kHeight) << "\" font-family=\"sans-serif\">\n"
      << "<title>Classical facts region in the (F3, F2) plane</title>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" fill=\"white\"/>\n";

  out << "<g id=\"frame\" stroke=\"black\" fill=\"none\">\n"
      << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(kSide) << "\" height=\"" << num(kSide) << "\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double t = k / 4.0;
    out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(py(0.0))
        << "\" x2=\"" << num(px(t)) << "\" y2=\"" << num(py(0.0) + 6.0)
        << "\"/>\n"
        << "<line x1=\"" << num(px(0.0) - 6.0) << "\" y1=\"" << num(py(t))
        << "\" x2=\"" << num(px(0.0)) << "\" y2=\"" << num(py(t)) << "\"/>\n";
  }
  out << "</g>\n<g id=\"axes\" font-size=\"14\" fill=\"black\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double t = k / 4.0;
    char label[8];
    std::snprintf(label, sizeof label, "%.2f", t);
    out << "<text x=\"" << num(px(t)) << "\" y=\"" << num(py(0.0) + 22.0)
        << "\" text-anchor=\"middle\">" << label << "</text>\n"
        << "<text x=\"" << num(px(0.0) - 10.0) << "\" y=\"" << num(py(t) + 5.0)
        << "\" text-anchor=\"end\">" << label << "</text>\n";
  }
  out << "<text x=\"" << num(px(0.5)) << "\" y=\"" << num(py(0.0) + 44.0)
      << "\" text-anchor=\"middle\">F3</text>\n"
      << "<text x=\"" << num(24.0) << "\" y=\"" << num(py(0.5))
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 24.000 "
      << num(py(0.5)) << ")\">F2</text>\n</g>\n";

  out << "<g id=\"classical\" fill=\"#d62728\" fill-opacity=\"0.6\">\n";
  for (const auto& r : classical) {
    out << "<circle class=\"classical\" cx=\"" << num(px(r.facts.f3()))
        << "\" cy=\"" << num(py(r.facts.f2())) << "\" r=\"2.5\"/>\n";
  }
  out << "</g>\n";

  const auto lines = boundary_lines();
  out << "<g id=\"boundary\" stroke=\"#1f77b4\" stroke-width=\"1.5\">\n";
  for (const auto& [name, line] :
       {std::pair{"upper", lines.upper}, std::pair{"lower", lines.lower}}) {
    out << "<line class=\"boundary\" id=\"boundary-" << name << "\" x1=\""
        << num(px(0.0)) << "\" y1=\"" << num(py(line(0.0))) << "\" x2=\""
        << num(px(1.0)) << "\" y2=\"" << num(py(line(1.0))) << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"states\" font-size=\"13\">\n";
  for (const auto& [label, f] : states) {
    const std::string l = escape(label);
    out << "<g class=\"state\" data-state=\"" << l << "\">"
        << "<circle class=\"state\" cx=\"" << num(px(f.f3())) << "\" cy=\""
        << num(py(f.f2())) << "\" r=\"5\" fill=\"black\"/>"
        << "<text class=\"state-label\" x=\"" << num(px(f.f3()) + 8.0)
        << "\" y=\"" << num(py(f.f2()) - 8.0) << "\">" << l
        << "</text></g>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace bellfacts::cli
