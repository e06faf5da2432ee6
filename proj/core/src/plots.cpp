#include "mrsdn/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrsdn::harness {
namespace {

struct Row {
  int scenario = 0;
  std::string policy;
  double lambda_d = 0.0;
  double lambda_v = 0.0;
  long seed = 0;
  std::string slice;
  double throughput_mbps = 0.0;
  double mean_latency_s = 0.0;
  double blocking_prob = 0.0;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Row> load_rows(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open results file: " + csv_path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("results file is empty: " + csv_path);
  }
  auto header = split_csv_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  const char* needed[] = {"scenario",        "policy",         "lambda_d",
                          "lambda_v",        "seed",           "slice",
                          "throughput_mbps", "mean_latency_s", "blocking_prob"};
  for (const char* name : needed) {
    if (!col.count(name)) {
      throw std::runtime_error(std::string("results file missing column: ") +
                               name);
    }
  }

  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() < header.size()) continue;
    Row r;
    r.scenario = std::stoi(f[col["scenario"]]);
    r.policy = f[col["policy"]];
    r.lambda_d = std::stod(f[col["lambda_d"]]);
    r.lambda_v = std::stod(f[col["lambda_v"]]);
    r.seed = std::stol(f[col["seed"]]);
    r.slice = f[col["slice"]];
    r.throughput_mbps = std::stod(f[col["throughput_mbps"]]);
    r.mean_latency_s = std::stod(f[col["mean_latency_s"]]);
    r.blocking_prob = std::stod(f[col["blocking_prob"]]);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) {
    throw std::runtime_error("results file has no data rows: " + csv_path);
  }
  return rows;
}

struct PointStat {
  double x = 0.0;
  double mean = 0.0;
  double half_ci = 0.0;
};

struct Series {
  std::string name;
  std::vector<PointStat> points;
};

// Collapse per-seed samples at each x into mean and a 95% normal CI.
std::vector<PointStat> aggregate(const std::map<double, std::vector<double>>& by_x) {
  std::vector<PointStat> out;
  for (const auto& [x, vals] : by_x) {
    std::vector<double> finite;
    for (double v : vals) {
      if (std::isfinite(v)) finite.push_back(v);
    }
    if (finite.empty()) continue;
    double sum = 0.0;
    for (double v : finite) sum += v;
    const double mean = sum / static_cast<double>(finite.size());
    double ss = 0.0;
    for (double v : finite) ss += (v - mean) * (v - mean);
    double half = 0.0;
    if (finite.size() > 1) {
      const double sd = std::sqrt(ss / static_cast<double>(finite.size() - 1));
      half = 1.96 * sd / std::sqrt(static_cast<double>(finite.size()));
    }
    out.push_back({x, mean, half});
  }
  return out;
}

const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a9d5d", "#8b5fbf", "#c98a2b"};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void write_chart(const std::string& path, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 const std::vector<Series>& series) {
  const double w = 640, h = 420;
  const double ml = 70, mr = 150, mt = 40, mb = 50;
  const double pw = w - ml - mr, ph = h - mt - mb;

  double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymax = std::max(ymax, p.mean + p.half_ci);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  ymax *= 1.05;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  svg << "<rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  // Axes and gridlines with tick labels.
  for (int i = 0; i <= 5; ++i) {
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    const double yy = py(yv);
    svg << "<line x1=\"" << ml << "\" y1=\"" << yy << "\" x2=\"" << ml + pw
        << "\" y2=\"" << yy << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << ml - 6 << "\" y=\"" << yy + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(yv) << "</text>\n";
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double xx = px(xv);
    svg << "<text x=\"" << xx << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(xv) << "</text>\n";
  }
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << x_label << "</text>\n";
  svg << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << mt + ph / 2 << ")\">" << y_label << "</text>\n";

  std::size_t si = 0;
  for (const auto& s : series) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream pts;
    for (const auto& p : s.points) {
      pts << px(p.x) << "," << py(p.mean) << " ";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
    for (const auto& p : s.points) {
      const double x = px(p.x);
      svg << "<circle cx=\"" << x << "\" cy=\"" << py(p.mean)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      if (p.half_ci > 0.0) {
        const double y0 = py(p.mean - p.half_ci);
        const double y1 = py(p.mean + p.half_ci);
        svg << "<line x1=\"" << x << "\" y1=\"" << y0 << "\" x2=\"" << x
            << "\" y2=\"" << y1 << "\" stroke=\"" << color << "\"/>\n";
        svg << "<line x1=\"" << x - 3 << "\" y1=\"" << y0 << "\" x2=\""
            << x + 3 << "\" y2=\"" << y0 << "\" stroke=\"" << color
            << "\"/>\n";
        svg << "<line x1=\"" << x - 3 << "\" y1=\"" << y1 << "\" x2=\""
            << x + 3 << "\" y2=\"" << y1 << "\" stroke=\"" << color
            << "\"/>\n";
      }
    }
    const double ly = mt + 16 + 18.0 * static_cast<double>(si);
    svg << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw + 34 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name
        << "</text>\n";
    ++si;
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot file: " + path);
  out << svg.str();
}

double modal_value(const std::vector<double>& vals) {
  std::map<double, int> counts;
  for (double v : vals) ++counts[v];
  double best = vals.empty() ? 0.0 : vals.front();
  int best_n = -1;
  for (const auto& [v, n] : counts) {
    if (n > best_n) {
      best = v;
      best_n = n;
    }
  }
  return best;
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& csv_path,
                                    const std::string& out_dir) {
  const auto rows = load_rows(csv_path);
  std::vector<std::string> written;

  std::vector<Row> s1, s2;
  for (const auto& r : rows) {
    (r.scenario == 2 ? s2 : s1).push_back(r);
  }

  if (!s1.empty()) {
    // fig_a: total data throughput vs lambda_d, one series per policy.
    // fig_b: mean data latency vs lambda_d, one series per policy.
    std::map<std::string, std::map<double, std::vector<double>>> tput, lat;
    for (const auto& r : s1) {
      if (r.slice != "data") continue;
      tput[r.policy][r.lambda_d].push_back(r.throughput_mbps);
      lat[r.policy][r.lambda_d].push_back(r.mean_latency_s * 1000.0);
    }
    std::vector<Series> a, b;
    for (const auto& [policy, by_x] : tput) a.push_back({policy, aggregate(by_x)});
    for (const auto& [policy, by_x] : lat) b.push_back({policy, aggregate(by_x)});
    const std::string fa = out_dir + "/fig_a.svg";
    const std::string fb = out_dir + "/fig_b.svg";
    write_chart(fa, "Data throughput vs arrival rate", "lambda_d (1/s)",
                "throughput (Mbps)", a);
    write_chart(fb, "Data flow latency vs arrival rate", "lambda_d (1/s)",
                "mean latency (ms)", b);
    written.push_back(fa);
    written.push_back(fb);
  }

  if (!s2.empty()) {
    std::vector<double> lv, ld;
    for (const auto& r : s2) {
      lv.push_back(r.lambda_v);
      ld.push_back(r.lambda_d);
    }
    const double lv0 = modal_value(lv);
    const double ld0 = modal_value(ld);

    // fig_c: per-slice throughput vs lambda_d at the most common lambda_v.
    std::map<std::string, std::map<double, std::vector<double>>> by_slice;
    for (const auto& r : s2) {
      if (r.lambda_v == lv0) {
        by_slice[r.slice][r.lambda_d].push_back(r.throughput_mbps);
      }
    }
    std::vector<Series> c;
    for (const auto& [slice, by_x] : by_slice) c.push_back({slice, aggregate(by_x)});
    const std::string fc = out_dir + "/fig_c.svg";
    write_chart(fc, "Per-slice throughput vs data arrival rate",
                "lambda_d (1/s)", "throughput (Mbps)", c);
    written.push_back(fc);

    // fig_d: video blocking vs lambda_v at the most common lambda_d.
    std::map<double, std::vector<double>> block;
    for (const auto& r : s2) {
      if (r.slice == "video" && r.lambda_d == ld0) {
        block[r.lambda_v].push_back(r.blocking_prob);
      }
    }
    std::vector<Series> d{{"video", aggregate(block)}};
    const std::string fd = out_dir + "/fig_d.svg";
    write_chart(fd, "Video blocking probability vs video arrival rate",
                "lambda_v (1/s)", "blocking probability", d);
    written.push_back(fd);
  }

  return written;
}

}  // namespace mrsdn::harness
