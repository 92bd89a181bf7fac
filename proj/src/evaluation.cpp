#include "liftseg/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace liftseg {

LabelMap::LabelMap(int width, int height, int fill)
    : width_(width), height_(height),
      labels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
              fill) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("label map dimensions must be at least 1x1");
}

LabelMap::LabelMap(int width, int height, std::vector<int> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("label map dimensions must be at least 1x1");
  if (labels_.size() !=
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw std::invalid_argument("label buffer does not match dimensions");
}

LabelMap assign_labels(const MaskStack& u, SimplexMode mode) {
  const int kc = u.num_channels();
  if (kc < 1) throw std::invalid_argument("empty mask stack");
  LabelMap out(u.width(), u.height(), 0);
  const std::size_t n = u.channel(0).size();
  for (std::size_t i = 0; i < n; ++i) {
    int best_label;
    double best_value;
    if (mode == SimplexMode::Inequality) {
      double sum = 0.0;
      for (int k = 0; k < kc; ++k) sum += u.channel(k)[i];
      best_label = 0;
      best_value = 1.0 - sum;  // implicit background mass
    } else {
      best_label = 1;
      best_value = u.channel(0)[i];
    }
    const int start = mode == SimplexMode::Inequality ? 1 : 2;
    for (int k = start; k <= kc; ++k) {
      const double v = u.channel(k - 1)[i];
      if (v > best_value) {
        best_value = v;
        best_label = k;
      }
    }
    out[i] = best_label;
  }
  return out;
}

namespace {

struct Counts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

double ratio_or_convention(double num, double denom, bool absent_both) {
  if (denom > 0.0) return num / denom;
  return absent_both ? 1.0 : 0.0;
}

Metrics metrics_from_counts(const Counts& c) {
  const bool absent_both = (c.tp + c.fp + c.fn) == 0;
  Metrics m;
  m.dice = ratio_or_convention(2.0 * static_cast<double>(c.tp),
                               static_cast<double>(2 * c.tp + c.fp + c.fn),
                               absent_both);
  m.accuracy = ratio_or_convention(static_cast<double>(c.tp + c.tn),
                                   static_cast<double>(c.tp + c.tn + c.fp + c.fn),
                                   absent_both);
  m.specificity = ratio_or_convention(static_cast<double>(c.tn),
                                      static_cast<double>(c.tn + c.fp), absent_both);
  m.recall = ratio_or_convention(static_cast<double>(c.tp),
                                 static_cast<double>(c.tp + c.fn), absent_both);
  m.precision = ratio_or_convention(static_cast<double>(c.tp),
                                    static_cast<double>(c.tp + c.fp), absent_both);
  return m;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

MetricsReport compute_metrics(const LabelMap& predicted, const LabelMap& truth,
                              std::optional<std::vector<int>> classes,
                              bool include_background) {
  if (!predicted.same_shape(truth))
    throw std::invalid_argument("prediction and truth must share one shape");

  std::vector<int> alphabet;
  if (classes) {
    alphabet = *classes;
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    if (alphabet.empty()) throw std::invalid_argument("empty class list");
  } else {
    std::set<int> seen;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      seen.insert(predicted[i]);
      seen.insert(truth[i]);
    }
    alphabet.assign(seen.begin(), seen.end());
  }

  MetricsReport report;
  Metrics sum;
  std::size_t averaged = 0;
  for (int label : alphabet) {
    Counts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      const bool p = predicted[i] == label;
      const bool t = truth[i] == label;
      if (p && t)
        ++c.tp;
      else if (p && !t)
        ++c.fp;
      else if (!p && t)
        ++c.fn;
      else
        ++c.tn;
    }
    const Metrics m = metrics_from_counts(c);
    report.per_class.push_back({label, m});
    if (label == 0 && !include_background) continue;
    report.averaged.push_back(label);
    sum.dice += m.dice;
    sum.accuracy += m.accuracy;
    sum.specificity += m.specificity;
    sum.recall += m.recall;
    sum.precision += m.precision;
    ++averaged;
  }
  if (averaged == 0) {
    // only background present and it is excluded; average it anyway rather
    // than report an empty mean
    report.averaged.push_back(alphabet.front());
    report.mean = report.per_class.front().values;
  } else {
    const double inv = 1.0 / static_cast<double>(averaged);
    report.mean.dice = sum.dice * inv;
    report.mean.accuracy = sum.accuracy * inv;
    report.mean.specificity = sum.specificity * inv;
    report.mean.recall = sum.recall * inv;
    report.mean.precision = sum.precision * inv;
  }
  return report;
}

void write_metrics_csv(std::ostream& os, const MetricsReport& report) {
  os << "class,dice,accuracy,specificity,recall,precision\n";
  for (const ClassMetrics& c : report.per_class) {
    const Metrics& m = c.values;
    os << c.label << ',' << format_double(m.dice) << ',' << format_double(m.accuracy)
       << ',' << format_double(m.specificity) << ',' << format_double(m.recall)
       << ',' << format_double(m.precision) << '\n';
  }
  const Metrics& m = report.mean;
  os << "mean," << format_double(m.dice) << ',' << format_double(m.accuracy) << ','
     << format_double(m.specificity) << ',' << format_double(m.recall) << ','
     << format_double(m.precision) << '\n';
}

std::string format_metrics_table(const MetricsReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-8s %8s %9s %12s %8s %10s\n", "class",
                "dice", "accuracy", "specificity", "recall", "precision");
  os << line;
  auto row = [&](const std::string& name, const Metrics& m) {
    std::snprintf(line, sizeof(line), "%-8s %8.4f %9.4f %12.4f %8.4f %10.4f\n",
                  name.c_str(), m.dice, m.accuracy, m.specificity, m.recall,
                  m.precision);
    os << line;
  };
  for (const ClassMetrics& c : report.per_class)
    row(std::to_string(c.label), c.values);
  row("mean", report.mean);
  return os.str();
}

}  // namespace liftseg
