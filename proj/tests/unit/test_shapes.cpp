#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"

namespace defgpa {
namespace {

using testing::Rng;

Matrix pts(std::initializer_list<std::initializer_list<double>> cols) {
  Matrix m(static_cast<Index>(cols.begin()->size()), static_cast<Index>(cols.size()));
  Index c = 0;
  for (const auto& col : cols) {
    Index r = 0;
    for (double v : col) m(r++, c) = v;
    ++c;
  }
  return m;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Unsupported;
}

TEST(Shape, InvisiblePointsAreNaN) {
  const Shape s(pts({{0, 0}, {1, 0}, {0, 1}, {5, 5}}), Visibility{true, true, true, false});
  EXPECT_TRUE(std::isnan(s.points()(0, 3)));
  EXPECT_EQ(s.visible_count(), 3);
  EXPECT_FALSE(s.is_full());
  EXPECT_EQ(s.visible_points().cols(), 3);
}

TEST(Shape, ValidatesVisibilityAndFiniteness) {
  EXPECT_EQ(code_of([] { Shape(pts({{0, 0}, {1, 0}, {0, 1}}), Visibility{true, true}); }),
            ErrorCode::FormatError);
  EXPECT_EQ(code_of([] { Shape(pts({{0, 0}, {1, 0}, {0, 1}}), Visibility{true, true, false}); }),
            ErrorCode::InsufficientOverlap);
  Matrix bad = pts({{0, 0}, {1, 0}, {0, 1}});
  bad(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of([&] { Shape{bad}; }), ErrorCode::FormatError);
}

TEST(ShapeSet, RejectsMismatchedAndUnconstrainedPoints) {
  const Shape a(pts({{0, 0}, {1, 0}, {0, 1}}));
  const Shape b(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(code_of([&] { ShapeSet({a, b}); }), ErrorCode::FormatError);
  const Visibility vis{true, true, true, false};
  const Shape c(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), vis);
  EXPECT_EQ(code_of([&] { ShapeSet({c, c}); }), ErrorCode::UnconstrainedPoint);
  EXPECT_EQ(code_of([] { ShapeSet(std::vector<Shape>{}); }), ErrorCode::FormatError);
}

TEST(Centroid, HandValues) {
  EXPECT_TRUE(centroid(Shape(pts({{0, 0}, {2, 0}, {1, 1e-9}}))).isApprox(
      Vector(Eigen::Vector2d(1, 1e-9 / 3)), 1e-12));
  EXPECT_LT(centroid(pts({{1, 2}, {-1, -2}, {3, 0}, {-3, 0}})).norm(), 1e-15);
  EXPECT_TRUE(centroid(pts({{0, 0}, {2, 0}})).isApprox(Vector(Eigen::Vector2d(1, 0))));
}

TEST(Centroid, MatchesDirectSummation) {
  Rng rng(1);
  const Matrix m = testing::random_matrix(3, 7, rng);
  Vector sum = Vector::Zero(3);
  for (Index j = 0; j < 7; ++j) {
    for (Index r = 0; r < 3; ++r) sum(r) += m(r, j);
  }
  EXPECT_LT((centroid(Shape(m)) - sum / 7.0).norm(), 1e-14);
}

TEST(Centroid, VisibleOnlyForPartialShapes) {
  const Shape s(pts({{0, 0}, {2, 0}, {1, 3}, {100, 100}}), Visibility{true, true, true, false});
  EXPECT_TRUE(centroid(s).isApprox(Vector(Eigen::Vector2d(1, 1))));
  EXPECT_EQ(code_of([&] { centroid(s, false); }), ErrorCode::DegenerateInput);
}

TEST(Center, ShiftsToZeroAndKeepsVisibility) {
  const Matrix m = center(pts({{1, 1}, {3, 1}}));
  EXPECT_TRUE(m.isApprox(pts({{-1, 0}, {1, 0}})));
  Rng rng(2);
  const Shape s(testing::random_matrix(2, 6, rng), Visibility{true, true, false, true, true, true});
  const Shape c = center(s);
  EXPECT_LT(centroid(c).norm(), 1e-12);
  EXPECT_EQ(c.visibility(), s.visibility());
  const Matrix already = center(testing::random_matrix(2, 5, rng));
  EXPECT_TRUE(center(already).isApprox(already, 1e-14));
}

TEST(Covariance, HandValuesAndRank) {
  const Matrix square = pts({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  EXPECT_TRUE(covariance(Shape(square)).isApprox(4.0 * Matrix::Identity(2, 2)));
  const Matrix line = pts({{0, 0}, {1, 2}, {2, 4}, {5, 10}});
  const EigenPairs e = eig_sym(covariance(line));
  EXPECT_NEAR(e.values(0), 0.0, 1e-12);
  EXPECT_GT(e.values(1), 1.0);
}

TEST(Covariance, MatchesLoopsAndTransformsCorrectly) {
  Rng rng(3);
  const Matrix m = testing::random_matrix(3, 9, rng);
  const Vector mu = m.rowwise().mean();
  Matrix ref = Matrix::Zero(3, 3);
  for (Index j = 0; j < 9; ++j) {
    for (Index a = 0; a < 3; ++a) {
      for (Index b = 0; b < 3; ++b) ref(a, b) += (m(a, j) - mu(a)) * (m(b, j) - mu(b));
    }
  }
  EXPECT_LT((covariance(m) - ref).norm(), 1e-12);
  const Matrix r = testing::random_rotation(3, rng);
  const Matrix moved = (r * m).colwise() + Vector(Eigen::Vector3d(4, -2, 7));
  EXPECT_LT((covariance(moved) - r * ref * r.transpose()).norm(), 1e-10);
  EXPECT_LT((eig_sym(covariance(moved)).values - eig_sym(ref).values).norm(), 1e-10);
  const Shape partial(m, Visibility{true, true, true, true, false, true, true, true, true});
  EXPECT_EQ(code_of([&] { covariance(partial); }), ErrorCode::DegenerateInput);
}

TEST(ShapeIo, JsonFullAndMissingPoints) {
  std::istringstream full(R"({"d":2,"m":3,"n":2,"shapes":[
    {"id":"a","points":[[0,0],[1,0],[0,1]]},
    {"id":"b","points":[[0,0],[2,0],[0,2]]}]})");
  const ShapeSet s = load_shapes_json(full);
  EXPECT_EQ(s.count(), 2u);
  EXPECT_TRUE(s.all_full());
  EXPECT_EQ(s[1].id(), "b");

  std::istringstream partial(R"({"d":2,"m":4,"shapes":[
    {"points":[[0,0],[1,0],[0,1],[1,1]]},
    {"points":[[0,0],[2,0],[0,2],null]}]})");
  const ShapeSet p = load_shapes_json(partial);
  EXPECT_FALSE(p[1].visible(3));
  EXPECT_TRUE(p[0].visible(3));
  EXPECT_EQ(p[0].id(), "s0");
}

TEST(ShapeIo, JsonErrors) {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return load_shapes_json(in);
  };
  EXPECT_EQ(code_of([&] { load("{not json"); }), ErrorCode::FormatError);
  EXPECT_EQ(code_of([&] { load(R"({"d":2,"m":2,"shapes":[{"points":[[0,0]]}]})"); }),
            ErrorCode::FormatError);
  EXPECT_EQ(code_of([&] {
              load(R"({"d":2,"m":4,"shapes":[{"points":[[0,0],[1,0],[0,1],null]},
                                              {"points":[[0,0],[1,0],[0,1],null]}]})");
            }),
            ErrorCode::UnconstrainedPoint);
  EXPECT_EQ(code_of([&] { load(""); }), ErrorCode::FormatError);
}

TEST(ShapeIo, JsonAndCsvRoundTripBitExact) {
  Rng rng(4);
  std::vector<Matrix> raw{testing::random_matrix(2, 6, rng, 123.0),
                          testing::random_matrix(2, 6, rng, 1e-3)};
  raw[0](0, 0) = 0.1;
  raw[1](1, 2) = 1.0 / 3.0;
  const ShapeSet set = testing::mask_shapes(raw, 0.3, rng, 3);

  std::stringstream json;
  save_shapes_json(json, set);
  const ShapeSet back = load_shapes_json(json);

  const auto dir = std::filesystem::temp_directory_path() / "defgpa_csv_roundtrip";
  std::filesystem::remove_all(dir);
  save_shapes_csv(dir, set);
  const ShapeSet csv = load_shapes_csv(dir / "manifest.txt");
  std::filesystem::remove_all(dir);

  for (const ShapeSet* other : {&back, &csv}) {
    ASSERT_EQ(other->count(), set.count());
    for (std::size_t i = 0; i < set.count(); ++i) {
      EXPECT_EQ((*other)[i].visibility(), set[i].visibility());
      for (Index j : set[i].visible_indices()) {
        for (Index r = 0; r < 2; ++r) EXPECT_EQ((*other)[i].points()(r, j), set[i].points()(r, j));
      }
    }
  }
}

TEST(ShapeIo, CsvManifestSkipsCommentsAndResolvesRelativePaths) {
  const auto dir = std::filesystem::temp_directory_path() / "defgpa_csv_manifest";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "sub");
  std::ofstream(dir / "sub" / "x.csv") << "0,0\n1,0\n\n0,1\n";
  std::ofstream(dir / "sub" / "y.csv") << "0,0\n2,0\n1,1\n0,2\n";
  std::ofstream(dir / "list.txt") << "# shapes\n\nsub/x.csv\nsub/y.csv\n";
  const ShapeSet s = load_shapes(dir / "list.txt", ShapeFormat::Csv);
  EXPECT_EQ(s.count(), 2u);
  EXPECT_FALSE(s[0].visible(2));
  EXPECT_EQ(s[0].id(), "x");
  std::ofstream(dir / "bad.csv") << "0,0\n1,zero\n0,1\n";
  std::ofstream(dir / "bad.txt") << "bad.csv\n";
  EXPECT_EQ(code_of([&] { load_shapes(dir / "bad.txt", ShapeFormat::Csv); }),
            ErrorCode::FormatError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace defgpa
