// Copyright 2026 The Heegaard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "heegaard/bigraph.hpp"
#include "heegaard/core.hpp"
#include "heegaard/intmat.hpp"

namespace heegaard {

enum class CurveKind { Alpha = 0, Beta = 1 };

inline const char* kind_name(CurveKind k) { return k == CurveKind::Alpha ? "alpha" : "beta"; }

/// An intersection point of alpha_{alpha} and beta_{beta} (0-based).
struct Point {
  int id;
  int alpha;
  int beta;
  int sign;
};

/// Unvalidated word data: what a file or a construction produces.
struct DiagramData {
  int genus = 0;
  std::vector<Point> points;
  std::vector<std::vector<int>> alpha_words;  // point ids along each alpha
  std::vector<std::vector<int>> beta_words;

  const std::vector<std::vector<int>>& words(CurveKind k) const {
    return k == CurveKind::Alpha ? alpha_words : beta_words;
  }
  std::vector<std::vector<int>>& words(CurveKind k) {
    return k == CurveKind::Alpha ? alpha_words : beta_words;
  }
};

/// Intersection graph read straight from word data; edge k is points[k].
inline IntersectionGraph intersection_graph(const DiagramData& d) {
  std::vector<EdgeSpec> es;
  for (auto& p : d.points) es.push_back({p.alpha, p.beta, p.sign});
  return IntersectionGraph(d.genus, es);
}

/// One side of an arc. The arc at (kind, curve, position) runs from the
/// point at that word position to the next one; left is the side on the
/// left of the curve's direction.
struct ArcSide {
  CurveKind kind;
  int curve;
  int position;
  bool left;

  bool operator==(const ArcSide&) const = default;
};

struct Face {
  std::vector<ArcSide> boundary;
};

/// A validated, cellularly embedded Heegaard diagram. Words are stored
/// rotated so that the smallest point id comes first; faces are traced once
/// at construction and the object is immutable afterwards.
class HeegaardDiagram {
 public:
  /// Validates the data and traces the faces. Throws ValidationError.
  static HeegaardDiagram build(DiagramData data) {
    HeegaardDiagram h;
    h.init(std::move(data));
    return h;
  }

  int genus() const { return data_.genus; }
  int point_count() const { return static_cast<int>(data_.points.size()); }
  const DiagramData& data() const { return data_; }
  const std::vector<Point>& points() const { return data_.points; }
  const std::vector<std::vector<int>>& words(CurveKind k) const { return data_.words(k); }
  const std::vector<std::vector<int>>& alpha_words() const { return data_.alpha_words; }
  const std::vector<std::vector<int>>& beta_words() const { return data_.beta_words; }
  const std::vector<Face>& faces() const { return faces_; }
  int face_count() const { return static_cast<int>(faces_.size()); }

  int index_of(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw PreconditionViolated("unknown point id " + std::to_string(id));
    return it->second;
  }
  /// Point index at a word position.
  int point_at(CurveKind k, int curve, int position) const {
    return word_[static_cast<int>(k)][curve][position];
  }
  int position_of(CurveKind k, int point_index) const {
    return pos_[static_cast<int>(k)][point_index];
  }
  int curve_of(CurveKind k, int point_index) const {
    const Point& p = data_.points[point_index];
    return k == CurveKind::Alpha ? p.alpha : p.beta;
  }

  /// Faces on the two sides of the arc starting at a point.
  int face_left(CurveKind k, int point_index) const { return dart_face_[dart(point_index, k, true)]; }
  int face_right(CurveKind k, int point_index) const { return dart_face_[dart(point_index, k, false)]; }

  IntersectionGraph intersection_graph() const { return heegaard::intersection_graph(data_); }
  SignedMatrix intersection_matrix() const { return intersection_graph().signed_matrix(); }

  /// Same diagram with one curve's orientation reversed: its word is read
  /// backwards and the signs of its points flip.
  HeegaardDiagram with_curve_reversed(CurveKind k, int curve) const {
    if (curve < 0 || curve >= genus()) throw PreconditionViolated("curve index out of range");
    DiagramData d = data_;
    auto& w = d.words(k)[curve];
    std::reverse(w.begin(), w.end());
    for (auto& p : d.points)
      if ((k == CurveKind::Alpha ? p.alpha : p.beta) == curve) p.sign = -p.sign;
    return build(std::move(d));
  }

 private:
  HeegaardDiagram() = default;

  static int dart(int x, CurveKind k, bool forward) {
    return (x * 2 + static_cast<int>(k)) * 2 + (forward ? 0 : 1);
  }

  int next_on(CurveKind k, int x) const {
    const auto& w = word_[static_cast<int>(k)][curve_of(k, x)];
    return w[(pos_[static_cast<int>(k)][x] + 1) % w.size()];
  }
  int prev_on(CurveKind k, int x) const {
    const auto& w = word_[static_cast<int>(k)][curve_of(k, x)];
    return w[(pos_[static_cast<int>(k)][x] + w.size() - 1) % w.size()];
  }

  void init(DiagramData data) {
    using VE = ValidationError;
    const int g = data.genus;
    if (g < 1) throw VE(VE::Kind::GenusMismatch, "genus must be positive");
    const int na = static_cast<int>(data.alpha_words.size());
    const int nb = static_cast<int>(data.beta_words.size());
    if (na != nb)
      throw VE(VE::Kind::WordInconsistency, std::to_string(na) + " alpha words but " + std::to_string(nb) + " beta words");
    if (na != g)
      throw VE(VE::Kind::GenusMismatch, "declared genus " + std::to_string(g) + " but the data has " +
                                            std::to_string(na) + " curves of each kind");
    std::sort(data.points.begin(), data.points.end(),
              [](const Point& x, const Point& y) { return x.id < y.id; });
    for (size_t k = 0; k < data.points.size(); ++k) {
      const Point& p = data.points[k];
      if (p.id <= 0) throw VE(VE::Kind::WordInconsistency, "point ids must be positive");
      if (k > 0 && data.points[k - 1].id == p.id)
        throw VE(VE::Kind::WordInconsistency, "duplicate point id " + std::to_string(p.id));
      if (p.alpha < 0 || p.alpha >= g || p.beta < 0 || p.beta >= g)
        throw VE(VE::Kind::WordInconsistency, "point " + std::to_string(p.id) + " names a missing curve");
      if (p.sign != 1 && p.sign != -1)
        throw VE(VE::Kind::WordInconsistency, "point " + std::to_string(p.id) + " has sign other than +1/-1");
      index_[p.id] = static_cast<int>(k);
    }
    const int V = static_cast<int>(data.points.size());
    for (int kind = 0; kind < 2; ++kind) {
      const CurveKind ck = static_cast<CurveKind>(kind);
      auto& words = data.words(ck);
      pos_[kind].assign(V, -1);
      word_[kind].assign(g, {});
      for (int c = 0; c < g; ++c) {
        auto& w = words[c];
        if (!w.empty()) std::rotate(w.begin(), std::min_element(w.begin(), w.end()), w.end());
        for (size_t k = 0; k < w.size(); ++k) {
          auto it = index_.find(w[k]);
          if (it == index_.end())
            throw VE(VE::Kind::WordInconsistency,
                     std::string(kind_name(ck)) + " word " + std::to_string(c + 1) + " names unknown point " +
                         std::to_string(w[k]));
          const int x = it->second;
          const Point& p = data.points[x];
          if ((ck == CurveKind::Alpha ? p.alpha : p.beta) != c)
            throw VE(VE::Kind::WordInconsistency, "point " + std::to_string(p.id) + " listed on the wrong " +
                                                      kind_name(ck) + " curve");
          if (pos_[kind][x] >= 0)
            throw VE(VE::Kind::WordInconsistency,
                     "point " + std::to_string(p.id) + " repeated in " + kind_name(ck) + " words");
          pos_[kind][x] = static_cast<int>(k);
          word_[kind][c].push_back(x);
        }
      }
      for (int x = 0; x < V; ++x)
        if (pos_[kind][x] < 0)
          throw VE(VE::Kind::WordInconsistency,
                   "point " + std::to_string(data.points[x].id) + " missing from the " + kind_name(ck) + " words");
      for (int c = 0; c < g; ++c)
        if (words[c].empty())
          throw VE(VE::Kind::GenusMismatch, std::string(kind_name(ck)) + " curve " + std::to_string(c + 1) +
                                                " meets nothing, so some region is not a disk");
    }
    data_ = std::move(data);
    trace();
    const int F = face_count();
    if (F != V + 2 - 2 * g)
      throw VE(VE::Kind::GenusMismatch, "traced " + std::to_string(F) + " faces, a genus-" + std::to_string(g) +
                                            " diagram with " + std::to_string(V) + " points needs " +
                                            std::to_string(V + 2 - 2 * g));
    for (int kind = 0; kind < 2; ++kind) {
      // The complement of the alpha curves is glued back along beta arcs.
      const CurveKind glue = kind == 0 ? CurveKind::Beta : CurveKind::Alpha;
      if (!faces_connected_across(glue))
        throw VE(VE::Kind::DisconnectedComplement,
                 std::string("the complement of the ") + (kind == 0 ? "alpha" : "beta") + " curves is disconnected");
    }
  }

  // Corner rule: at a point of sign +1 the counterclockwise order of arc
  // ends is (alpha-out, beta-out, alpha-in, beta-in); sign -1 swaps the two
  // beta ends. A face turns to the next end clockwise.
  void trace() {
    const int V = point_count();
    dart_face_.assign(4 * V, -1);
    enum End { AO, BO, AI, BI };
    static constexpr std::array<End, 4> kPos{AO, BO, AI, BI};
    static constexpr std::array<End, 4> kNeg{AO, BI, AI, BO};
    for (int x0 = 0; x0 < V; ++x0)
      for (int k0 = 0; k0 < 2; ++k0)
        for (int f0 = 0; f0 < 2; ++f0) {
          if (dart_face_[dart(x0, static_cast<CurveKind>(k0), f0 == 0)] >= 0) continue;
          Face face;
          const int id = static_cast<int>(faces_.size());
          int x = x0;
          CurveKind k = static_cast<CurveKind>(k0);
          bool fwd = f0 == 0;
          while (dart_face_[dart(x, k, fwd)] < 0) {
            dart_face_[dart(x, k, fwd)] = id;
            face.boundary.push_back({k, curve_of(k, x), pos_[static_cast<int>(k)][x], fwd});
            int v;
            End end;
            if (fwd) {
              v = next_on(k, x);
              end = k == CurveKind::Alpha ? AI : BI;
            } else {
              v = x;
              end = k == CurveKind::Alpha ? AO : BO;
            }
            const auto& order = data_.points[v].sign > 0 ? kPos : kNeg;
            int at = static_cast<int>(std::find(order.begin(), order.end(), end) - order.begin());
            End e = order[(at + 3) % 4];
            k = (e == AO || e == AI) ? CurveKind::Alpha : CurveKind::Beta;
            if (e == AO || e == BO) {
              x = v;
              fwd = true;
            } else {
              x = prev_on(k, v);
              fwd = false;
            }
          }
          faces_.push_back(std::move(face));
        }
  }

  bool faces_connected_across(CurveKind glue) const {
    std::vector<int> parent(faces_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = face_count();
    for (int x = 0; x < point_count(); ++x) {
      int a = find(face_left(glue, x)), b = find(face_right(glue, x));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components == 1;
  }

  DiagramData data_;
  std::unordered_map<int, int> index_;
  std::array<std::vector<std::vector<int>>, 2> word_;  // point indices
  std::array<std::vector<int>, 2> pos_;
  std::vector<Face> faces_;
  std::vector<int> dart_face_;
};

// ---------------------------------------------------------------------------
// Connected sums and splitting.

/// Splits along a reducibility witness of G(H): alpha curves in the block
/// and beta curves in its neighbor set form the first child, the rest the
/// second. Points joining the two blocks are dropped. Children whose words
/// do not describe a cellular surface raise SplitObstructed.
inline std::pair<HeegaardDiagram, HeegaardDiagram> split_connected_sum(const HeegaardDiagram& H,
                                                                       const ReductionWitness& w) {
  const int g = H.genus();
  if (w.alphas.empty() || w.alphas.size() != w.betas.size() || static_cast<int>(w.alphas.size()) >= g)
    throw PreconditionViolated("witness must pair a proper nonempty set of alphas with as many betas");
  std::vector<int> ra(g, -1), rb(g, -1);
  auto other_a = complement_of(w.alphas, g), other_b = complement_of(w.betas, g);
  for (size_t k = 0; k < w.alphas.size(); ++k) ra[w.alphas[k]] = static_cast<int>(k);
  for (size_t k = 0; k < w.betas.size(); ++k) rb[w.betas[k]] = static_cast<int>(k);
  for (size_t k = 0; k < other_a.size(); ++k) ra[other_a[k]] = static_cast<int>(k);
  for (size_t k = 0; k < other_b.size(); ++k) rb[other_b[k]] = static_cast<int>(k);
  std::vector<char> a_in(g, 0), b_in(g, 0);
  for (int a : w.alphas) a_in[a] = 1;
  for (int b : w.betas) b_in[b] = 1;
  for (auto& p : H.points())
    if (a_in[p.alpha] && !b_in[p.beta])
      throw PreconditionViolated("witness alphas meet a beta outside the block");

  auto child = [&](bool first) {
    DiagramData d;
    d.genus = first ? static_cast<int>(w.alphas.size()) : g - static_cast<int>(w.alphas.size());
    std::unordered_map<int, char> keep;
    for (auto& p : H.points()) {
      bool in = a_in[p.alpha] == first && b_in[p.beta] == first;
      keep[p.id] = in;
      if (in) d.points.push_back({p.id, ra[p.alpha], rb[p.beta], p.sign});
    }
    d.alpha_words.assign(d.genus, {});
    d.beta_words.assign(d.genus, {});
    for (int c = 0; c < g; ++c) {
      if (a_in[c] == first)
        for (int id : H.alpha_words()[c])
          if (keep[id]) d.alpha_words[ra[c]].push_back(id);
      if (b_in[c] == first)
        for (int id : H.beta_words()[c])
          if (keep[id]) d.beta_words[rb[c]].push_back(id);
    }
    try {
      return HeegaardDiagram::build(std::move(d));
    } catch (const ValidationError& e) {
      throw SplitObstructed(std::string(first ? "first" : "second") + " summand is not a valid diagram (" +
                            e.what() + ")");
    }
  };
  HeegaardDiagram left = child(true);
  HeegaardDiagram right = child(false);
  return {std::move(left), std::move(right)};
}

struct FaceRef {
  int component;
  int face;
  bool operator==(const FaceRef&) const = default;
};

/// Disjoint diagrams joined by connected sums. Each merge glues a tube
/// between two faces, so the merged region is an annulus and the complex is
/// not cellular; everything else (curves, points, generators) is the
/// disjoint union.
class DiagramComplex {
 public:
  explicit DiagramComplex(HeegaardDiagram d) { parts_.push_back(std::move(d)); }

  static DiagramComplex connect(const DiagramComplex& x, FaceRef fx, const DiagramComplex& y, FaceRef fy) {
    x.check(fx);
    y.check(fy);
    DiagramComplex out = x;
    const int shift = static_cast<int>(x.parts_.size());
    for (auto& p : y.parts_) out.parts_.push_back(p);
    for (auto [a, b] : y.merges_) out.merges_.push_back({{a.component + shift, a.face}, {b.component + shift, b.face}});
    out.merges_.push_back({fx, {fy.component + shift, fy.face}});
    return out;
  }

  const std::vector<HeegaardDiagram>& components() const { return parts_; }
  const std::vector<std::pair<FaceRef, FaceRef>>& merges() const { return merges_; }

  int genus() const {
    int g = 0;
    for (auto& p : parts_) g += p.genus();
    return g;
  }
  int point_count() const {
    int v = 0;
    for (auto& p : parts_) v += p.point_count();
    return v;
  }
  /// Regions of the summed surface: component faces, merged faces counted once.
  int face_count() const {
    int f = 0;
    for (auto& p : parts_) f += p.face_count();
    return f - static_cast<int>(merges_.size());
  }
  /// Offset of a component's curves in the summed numbering.
  int curve_offset(int component) const {
    int o = 0;
    for (int c = 0; c < component; ++c) o += parts_[c].genus();
    return o;
  }
  /// Offset of a component's faces in the flattened face numbering.
  int face_offset(int component) const {
    int o = 0;
    for (int c = 0; c < component; ++c) o += parts_[c].face_count();
    return o;
  }
  int flat_face_count() const { return face_offset(static_cast<int>(parts_.size())); }

  IntersectionGraph intersection_graph() const {
    std::vector<EdgeSpec> es;
    for (size_t c = 0; c < parts_.size(); ++c) {
      int o = curve_offset(static_cast<int>(c));
      for (auto& p : parts_[c].points()) es.push_back({p.alpha + o, p.beta + o, p.sign});
    }
    return IntersectionGraph(genus(), es);
  }
  SignedMatrix intersection_matrix() const { return intersection_graph().signed_matrix(); }

  Integer generator_count(int limit = Limits{}.permanent_size) const {
    Integer n = 1;
    for (auto& p : parts_) n *= count_matchings(p.intersection_graph(), limit);
    return n;
  }

 private:
  void check(FaceRef f) const {
    if (f.component < 0 || f.component >= static_cast<int>(parts_.size()) || f.face < 0 ||
        f.face >= parts_[f.component].face_count())
      throw PreconditionViolated("face reference out of range");
  }

  std::vector<HeegaardDiagram> parts_;
  std::vector<std::pair<FaceRef, FaceRef>> merges_;
};

inline DiagramComplex connect_sum(const HeegaardDiagram& a, int fa, const HeegaardDiagram& b, int fb) {
  return DiagramComplex::connect(DiagramComplex(a), {0, fa}, DiagramComplex(b), {0, fb});
}

inline DiagramComplex connect_sum(const DiagramComplex& a, FaceRef fa, const HeegaardDiagram& b, int fb) {
  return DiagramComplex::connect(a, fa, DiagramComplex(b), {0, fb});
}

// ---------------------------------------------------------------------------
// Waves and anti-waves.

/// An arc inside a face joining two distinct arcs of one curve. It is a
/// wave when the face lies on the same side of the curve at both ends.
struct WaveRecord {
  int face;
  CurveKind kind;
  int curve;
  int first_position;  // first < second
  int second_position;
  bool first_left;
  bool second_left;

  bool is_wave() const { return first_left == second_left; }
  bool operator==(const WaveRecord&) const = default;
};

struct WaveReport {
  std::vector<WaveRecord> waves;
  std::vector<WaveRecord> antiwaves;
};

inline WaveReport detect_waves(const HeegaardDiagram& H) {
  WaveReport out;
  for (int f = 0; f < H.face_count(); ++f) {
    const auto& bd = H.faces()[f].boundary;
    for (size_t i = 0; i < bd.size(); ++i)
      for (size_t j = i + 1; j < bd.size(); ++j) {
        const ArcSide &x = bd[i], &y = bd[j];
        if (x.kind != y.kind || x.curve != y.curve || x.position == y.position) continue;
        const ArcSide& lo = x.position < y.position ? x : y;
        const ArcSide& hi = x.position < y.position ? y : x;
        WaveRecord r{f, x.kind, x.curve, lo.position, hi.position, lo.left, hi.left};
        (r.is_wave() ? out.waves : out.antiwaves).push_back(r);
      }
  }
  return out;
}

namespace detail {

inline bool record_on_face(const HeegaardDiagram& H, const WaveRecord& r) {
  if (r.face < 0 || r.face >= H.face_count() || r.curve < 0 || r.curve >= H.genus()) return false;
  if (r.first_position >= r.second_position) return false;
  const auto& bd = H.faces()[r.face].boundary;
  ArcSide a{r.kind, r.curve, r.first_position, r.first_left};
  ArcSide b{r.kind, r.curve, r.second_position, r.second_left};
  return std::find(bd.begin(), bd.end(), a) != bd.end() && std::find(bd.begin(), bd.end(), b) != bd.end();
}

/// Word data with the curve replaced by one of its two pieces; points on
/// the other piece disappear from every word.
inline DiagramData surgery(const HeegaardDiagram& H, const WaveRecord& r, bool first_piece) {
  const auto& w = H.words(r.kind)[r.curve];
  const int n = static_cast<int>(w.size());
  std::vector<int> kept;
  int from = first_piece ? r.first_position : r.second_position;
  int to = first_piece ? r.second_position : r.first_position + n;
  for (int k = from + 1; k <= to; ++k) kept.push_back(w[k % n]);
  std::unordered_map<int, char> drop;
  for (int id : w) drop[id] = 1;
  for (int id : kept) drop[id] = 0;
  DiagramData d = H.data();
  d.points.erase(std::remove_if(d.points.begin(), d.points.end(), [&](const Point& p) {
                   auto it = drop.find(p.id);
                   return it != drop.end() && it->second;
                 }),
                 d.points.end());
  for (int kind = 0; kind < 2; ++kind)
    for (auto& word : d.words(static_cast<CurveKind>(kind)))
      word.erase(std::remove_if(word.begin(), word.end(),
                                [&](int id) {
                                  auto it = drop.find(id);
                                  return it != drop.end() && it->second;
                                }),
                 word.end());
  d.words(r.kind)[r.curve] = kept;
  return d;
}

}  // namespace detail

/// One of the two curves a wave or anti-wave produces.
struct WaveCandidate {
  DiagramData data;
  std::optional<HeegaardDiagram> diagram;  // set when the data validates
  std::string failure;                     // validation message otherwise
  Integer generator_count;
};

/// Both curve replacements for a wave. Word data cannot tell which one
/// presents the original manifold, so both are returned.
inline std::pair<WaveCandidate, WaveCandidate> wave_move_candidates(const HeegaardDiagram& H, const WaveRecord& r,
                                                                    int limit = Limits{}.permanent_size) {
  if (!r.is_wave() || !detail::record_on_face(H, r)) throw InvalidWave("record is not a wave of this diagram");
  auto make = [&](bool first) {
    WaveCandidate c;
    c.data = detail::surgery(H, r, first);
    c.generator_count = count_matchings(intersection_graph(c.data), limit);
    try {
      c.diagram = HeegaardDiagram::build(c.data);
    } catch (const ValidationError& e) {
      c.failure = e.what();
    }
    return c;
  };
  WaveCandidate a = make(true);
  WaveCandidate b = make(false);
  return {std::move(a), std::move(b)};
}

/// Replaces the curve by each piece in turn. Every generator of H uses
/// exactly one point of the curve, so the children's generators partition
/// those of H.
inline std::pair<HeegaardDiagram, HeegaardDiagram> antiwave_split(const HeegaardDiagram& H, const WaveRecord& r) {
  if (r.is_wave() || !detail::record_on_face(H, r))
    throw InvalidAntiwave("record is not an anti-wave of this diagram");
  auto make = [&](bool first) {
    try {
      return HeegaardDiagram::build(detail::surgery(H, r, first));
    } catch (const ValidationError& e) {
      throw ChildValidationFailed(std::string(first ? "first" : "second") + " child: " + e.what());
    }
  };
  HeegaardDiagram a = make(true);
  HeegaardDiagram b = make(false);
  return {std::move(a), std::move(b)};
}

}  // namespace heegaard
