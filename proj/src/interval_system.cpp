#include "nilsmooth/interval_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilsmooth/error.hpp"

namespace nilsmooth {

std::string Label::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coords[i]);
  }
  return out + ")";
}

Label Label::parse(const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw config_error("malformed label '" + text + "'");
  Label l;
  std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return l;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      l.coords.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw config_error("malformed label '" + text + "'");
    }
  }
  return l;
}

std::size_t LabelHash::operator()(const Label& l) const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t c : l.coords) {
    h ^= static_cast<std::uint64_t>(c) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string manifold_name(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::Line: return "line";
    case ManifoldKind::Circle: return "circle";
    case ManifoldKind::Segment: return "segment";
  }
  return "line";
}

ManifoldKind manifold_from_name(const std::string& name) {
  for (ManifoldKind k : {ManifoldKind::Line, ManifoldKind::Circle, ManifoldKind::Segment})
    if (manifold_name(k) == name) return k;
  throw config_error("unknown manifold '" + name + "'");
}

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    compensation_ += (sum_ - t) + v;
  else
    compensation_ += (v - t) + sum_;
  sum_ = t;
}

IntervalFamily::IntervalFamily(ManifoldKind manifold, double start, double end,
                               std::vector<Interval> items, double complement_unit)
    : manifold_(manifold), start_(start), end_(end), items_(std::move(items)) {
  if (!(end_ > start_) || !std::isfinite(start_) || !std::isfinite(end_))
    throw config_error("interval family needs a finite window with end > start");
  const double slack = 1e-12 * std::max(1.0, extent());
  CompensatedSum total;
  prefix_lengths_.reserve(items_.size() + 1);
  prefix_lengths_.push_back(0.0);
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Interval& it = items_[i];
    if (!(it.length > 0.0) || !std::isfinite(it.length))
      throw config_error("interval " + it.label.to_string() + " has non-positive length");
    if (it.position < start_ - slack || it.right() > end_ + slack)
      throw config_error("interval " + it.label.to_string() + " leaves the window");
    if (i > 0 && it.position < items_[i - 1].right() - slack)
      throw config_error("intervals " + items_[i - 1].label.to_string() + " and " +
                         it.label.to_string() + " overlap or are out of order");
    if (!index_.emplace(it.label, i).second)
      throw config_error("duplicate interval label " + it.label.to_string());
    total.add(it.length);
    prefix_lengths_.push_back(total.value());
  }
  total_length_ = total.value();
  const double comp = complement_total();
  complement_unit_ = complement_unit > 0.0 ? complement_unit : (comp > slack ? comp : 1.0);
}

std::optional<std::size_t> IntervalFamily::find(const Label& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t IntervalFamily::index_of(const Label& label) const {
  auto i = find(label);
  if (!i) throw domain_error("label " + label.to_string() + " is outside the window");
  return *i;
}

double IntervalFamily::reduce(double x, long long& deck) const {
  deck = 0;
  if (!periodic()) return x;
  const double p = extent();
  const double k = std::floor((x - start_) / p);
  deck = static_cast<long long>(k);
  double r = x - k * p;
  if (r >= end_) {  // rounding at the period boundary
    r -= p;
    ++deck;
  }
  if (r < start_) r = start_;
  return r;
}

std::optional<std::size_t> IntervalFamily::locate(double x) const {
  auto it = std::upper_bound(items_.begin(), items_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.position; });
  if (it == items_.begin()) return std::nullopt;
  const std::size_t k = static_cast<std::size_t>(it - items_.begin()) - 1;
  if (x < items_[k].right()) return k;
  return std::nullopt;
}

std::size_t IntervalFamily::count_before(double x) const {
  auto it = std::upper_bound(items_.begin(), items_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.position; });
  const std::size_t k = static_cast<std::size_t>(it - items_.begin());
  if (k == 0) return 0;
  return x >= items_[k - 1].right() ? k : k - 1;
}

double IntervalFamily::complement_before(double x) const {
  auto it = std::upper_bound(items_.begin(), items_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.position; });
  const std::size_t k = static_cast<std::size_t>(it - items_.begin());
  if (k == 0) return std::max(0.0, x - start_);
  const Interval& last = items_[k - 1];
  const double covered = prefix_lengths_[k - 1] + std::min(last.length, x - last.position);
  return std::max(0.0, (x - start_) - covered);
}

double IntervalFamily::collapse(double x) const {
  long long deck = 0;
  const double r = reduce(x, deck);
  if (!periodic()) require_in_domain(x);
  return (static_cast<double>(deck) * complement_total() + complement_before(r)) / complement_unit_;
}

double IntervalFamily::expand(double y) const {
  const double comp = complement_total();
  if (!(comp > 0.0)) throw domain_error("expand: family has a null complement");
  double m = y * complement_unit_;
  double deck = 0.0;
  if (periodic()) {
    deck = std::floor(m / comp);
    m -= deck * comp;
  } else if (m < -1e-12 * comp || m > comp * (1 + 1e-12)) {
    throw domain_error("expand: collapse coordinate outside the window");
  }
  // Complement measure accumulated before the left endpoint of item k.
  auto comp_at = [&](std::size_t k) { return (items_[k].position - start_) - prefix_lengths_[k]; };
  std::size_t lo = 0, hi = items_.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (comp_at(mid) < m)
      lo = mid + 1;
    else
      hi = mid;
  }
  double x;
  if (lo < items_.size())
    x = items_[lo].position - (comp_at(lo) - m);
  else
    x = end_ - (comp - m);
  return x + deck * extent();
}

void IntervalFamily::require_in_domain(double x) const {
  if (periodic()) return;
  const double slack = 1e-12 * std::max(1.0, extent());
  if (!(x >= start_ - slack && x <= end_ + slack)) {
    std::ostringstream os;
    os.precision(17);
    os << "point " << x << " outside window [" << start_ << ", " << end_ << "]";
    throw domain_error(os.str());
  }
}

double LengthAssignment::at(const Label& l) const {
  auto it = lengths.find(l);
  if (it == lengths.end()) throw config_error("no length assigned to label " + l.to_string());
  return it->second;
}

void LengthAssignment::validate() const {
  for (const auto& [label, len] : lengths)
    if (!(len > 0.0) || !std::isfinite(len))
      throw config_error("length for " + label.to_string() + " is not finite and positive");
  if (!(tail_bound >= 0.0) || !std::isfinite(tail_bound))
    throw config_error("tail bound must be finite and non-negative");
}

std::vector<Label> lex_window(std::size_t n, std::int64_t window) {
  if (window < 0) throw config_error("window must be non-negative");
  std::vector<Label> out;
  Label cur{std::vector<std::int64_t>(n, -window)};
  while (true) {
    out.push_back(cur);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (cur.coords[pos] < window) {
        ++cur.coords[pos];
        for (std::size_t j = pos + 1; j < n; ++j) cur.coords[j] = -window;
        break;
      }
      if (pos == 0) return out;
    }
    if (n == 0) return out;
  }
}

LengthAssignment geometric_index_lengths(std::size_t n, std::int64_t window, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw config_error("geometric ratio must lie in (0, 1)");
  LengthAssignment a;
  CompensatedSum window_sum;
  for (const Label& l : lex_window(n, window)) {
    std::int64_t l1 = 0;
    for (auto c : l.coords) l1 += c < 0 ? -c : c;
    const double len = std::pow(ratio, static_cast<double>(l1));
    a.lengths.emplace(l, len);
    window_sum.add(len);
  }
  const double total = std::pow((1.0 + ratio) / (1.0 - ratio), static_cast<double>(n));
  a.tail_bound = std::max(0.0, total - window_sum.value());
  return a;
}

LengthAssignment uniform_index_lengths(std::size_t n, std::int64_t window, double length) {
  LengthAssignment a;
  for (const Label& l : lex_window(n, window)) a.lengths.emplace(l, length);
  a.tail_bound = 0.0;
  return a;
}

IntervalFamily build_lex_layout(std::size_t n, std::int64_t window, const LengthAssignment& base) {
  if (n == 0) throw config_error("layout dimension must be positive");
  std::vector<Interval> items;
  CompensatedSum cursor;
  for (const Label& l : lex_window(n, window)) {
    const double len = base.at(l);
    if (!(len > 0.0) || !std::isfinite(len))
      throw config_error("length for " + l.to_string() + " is not finite and positive");
    items.push_back({l, cursor.value(), len});
    cursor.add(len);
  }
  const double total = cursor.value();
  if (!std::isfinite(total)) throw config_error("layout total length overflows");
  return IntervalFamily(ManifoldKind::Line, 0.0, total, std::move(items));
}

LengthHomeo::LengthHomeo(IntervalFamily source, const LengthAssignment& target_lengths)
    : source_(std::move(source)) {
  target_lengths.validate();
  const double comp = source_.complement_total();
  const bool null_complement = comp <= 1e-12 * std::max(1.0, source_.extent());
  if (null_complement) {
    complement_scale_ = 0.0;
  } else {
    complement_scale_ = target_lengths.tail_bound / comp;
    if (!(complement_scale_ > 0.0))
      throw config_error("source complement has positive measure but the target tail bound is zero");
  }

  std::vector<Interval> items;
  items.reserve(source_.size());
  CompensatedSum lengths;
  for (const Interval& it : source_.items()) {
    const double len = target_lengths.at(it.label);
    const double pos =
        lengths.value() + complement_scale_ * source_.complement_before(it.position);
    items.push_back({it.label, pos, len});
    lengths.add(len);
  }
  const double end = lengths.value() + complement_scale_ * (null_complement ? 0.0 : comp);
  if (!std::isfinite(end)) throw config_error("target lengths overflow");
  target_ = IntervalFamily(source_.manifold(), 0.0, end, std::move(items),
                           null_complement ? 0.0 : complement_scale_ * source_.complement_unit());
}

double LengthHomeo::transfer(const IntervalFamily& from, const IntervalFamily& to, double scale,
                             double x) {
  long long deck = 0;
  const double r = from.reduce(x, deck);
  from.require_in_domain(x);
  double y;
  if (auto k = from.locate(r)) {
    const Interval& a = from.item(*k);
    const Interval& b = to.item(*k);
    y = b.position + (r - a.position) * (b.length / a.length);
  } else {
    y = to.start() + to.prefix_length(from.count_before(r)) +
        scale * from.complement_before(r);
  }
  return y + static_cast<double>(deck) * to.extent();
}

double LengthHomeo::evaluate(double x) const { return transfer(source_, target_, complement_scale_, x); }

double LengthHomeo::invert(double y) const {
  const double back = complement_scale_ > 0.0 ? 1.0 / complement_scale_ : 0.0;
  return transfer(target_, source_, back, y);
}

LengthHomeo length_homeomorphism(const IntervalFamily& family, const LengthAssignment& lengths) {
  return LengthHomeo(family, lengths);
}

}  // namespace nilsmooth
