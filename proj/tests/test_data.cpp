#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "alab/data.hpp"
#include "alab/rng.hpp"

using namespace alab;

namespace {

std::string tmp_path(const std::string& name) { return "/tmp/alab_data_" + name; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

TEST_CASE("IDX: hand-built one-image fixture") {
    const auto img = tmp_path("one.img");
    const auto lbl = tmp_path("one.lbl");
    std::vector<std::uint8_t> pixels(784, 255);
    write_idx_images(img, pixels, 1, 28, 28);
    write_idx_labels(lbl, {7});
    const Dataset ds = load_mnist_idx(img, lbl);
    CHECK(ds.n() == 1);
    CHECK(ds.dim() == 784);
    for (double v : ds.features.data) CHECK(v == 1.0);
    CHECK(ds.targets.data[0] == 7.0);
    CHECK(ds.classification);
    std::remove(img.c_str());
    std::remove(lbl.c_str());
}

TEST_CASE("IDX: magic, truncation and count errors") {
    const auto img = tmp_path("bad.img");
    const auto lbl = tmp_path("bad.lbl");
    // labels magic in an images slot
    write_idx_labels(img, {1, 2, 3});
    write_idx_labels(lbl, {1, 2, 3});
    CHECK_THROWS_AS(load_mnist_idx(img, lbl), DataError);

    // truncated image payload
    write_file(img, std::string("\x00\x00\x08\x03\x00\x00\x00\x02\x00\x00\x00\x1c\x00\x00\x00\x1c", 16) +
                        std::string(100, 'x'));
    CHECK_THROWS_AS(load_mnist_idx(img, lbl), DataError);

    // count mismatch
    std::vector<std::uint8_t> pixels(784 * 2, 0);
    write_idx_images(img, pixels, 2, 28, 28);
    CHECK_THROWS_AS(load_mnist_idx(img, lbl), DataError);

    CHECK_THROWS_AS(load_mnist_idx(tmp_path("nope.img"), lbl), DataError);
    std::remove(img.c_str());
    std::remove(lbl.c_str());
}

TEST_CASE("IDX round trip is bit-exact") {
    Rng rng(77);
    std::vector<std::uint8_t> pixels(5 * 784);
    for (auto& p : pixels) p = static_cast<std::uint8_t>(rng.below(256));
    std::vector<std::uint8_t> labels = {0, 3, 9, 5, 1};
    const auto img = tmp_path("rt.img");
    const auto lbl = tmp_path("rt.lbl");
    write_idx_images(img, pixels, 5, 28, 28);
    write_idx_labels(lbl, labels);
    const Dataset ds = load_mnist_idx(img, lbl);

    const auto img2 = tmp_path("rt2.img");
    const auto lbl2 = tmp_path("rt2.lbl");
    dataset_to_idx(ds, img2, lbl2);
    // byte-for-byte identical files
    std::ifstream a(img, std::ios::binary), b(img2, std::ios::binary);
    const std::string fa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string fb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(fa == fb);
    std::ifstream c(lbl, std::ios::binary), d(lbl2, std::ios::binary);
    const std::string fc((std::istreambuf_iterator<char>(c)), std::istreambuf_iterator<char>());
    const std::string fd((std::istreambuf_iterator<char>(d)), std::istreambuf_iterator<char>());
    CHECK(fc == fd);
    for (const auto& p : {img, lbl, img2, lbl2}) std::remove(p.c_str());
}

TEST_CASE("CSV: two-row fixture") {
    const auto path = tmp_path("two.csv");
    write_file(path, "1,2,3\n4,5,6\n");
    const Dataset ds = load_csv_regression(path, 2);
    CHECK(ds.n() == 2);
    CHECK(ds.dim() == 2);
    CHECK(ds.features.data == std::vector<double>{1, 2, 4, 5});
    CHECK(ds.targets.data == std::vector<double>{3, 6});
    std::remove(path.c_str());
}

TEST_CASE("CSV: header auto-detection and errors") {
    const auto path = tmp_path("hdr.csv");
    write_file(path, "a,b,c\n1,2,3\n4,5,6\n");
    const Dataset ds = load_csv_regression(path, 2);
    CHECK(ds.n() == 2); // header skipped

    write_file(path, "1,2,3\n4,5\n");
    CHECK_THROWS_AS(load_csv_regression(path, 2), DataError); // ragged

    write_file(path, "1,2,3\n4,oops,6\n");
    CHECK_THROWS_AS(load_csv_regression(path, 2), DataError); // non-numeric body

    write_file(path, "1,2,3\n");
    CHECK_THROWS_AS(load_csv_regression(path, 5), DataError); // missing target column

    CHECK_THROWS_AS(load_csv_regression(tmp_path("nope.csv"), 0), DataError);
    std::remove(path.c_str());
}

TEST_CASE("CSV: bundled regression fixture has the 13-feature schema") {
    const Dataset ds = load_csv_regression("data/fixtures/boston_synth.csv", 13);
    CHECK(ds.n() == 20);
    CHECK(ds.dim() == 13);
}

TEST_CASE("synth_function: noiseless sin grid") {
    const Dataset ds = synth_function("sin", -3.0, 3.0, 5, 0.0, 1);
    CHECK(ds.features.data == std::vector<double>{-3.0, -1.5, 0.0, 1.5, 3.0});
    CHECK(ds.targets.data[0] == std::sin(-3.0));
    CHECK(ds.targets.data[1] == std::sin(-1.5));
    CHECK(ds.targets.data[2] == 0.0);
    CHECK(ds.targets.data[3] == std::sin(1.5));
    CHECK(ds.targets.data[4] == std::sin(3.0));
}

TEST_CASE("synth_function: seeded noise reproducibility and definitions") {
    const Dataset a = synth_function("sin", -1.0, 1.0, 50, 0.3, 42);
    const Dataset b = synth_function("sin", -1.0, 1.0, 50, 0.3, 42);
    CHECK(a.targets.data == b.targets.data);

    const Dataset p = synth_function("poly3", -2.0, 2.0, 9, 0.0, 1);
    for (std::size_t i = 0; i < p.n(); ++i) {
        const double x = p.features.data[i];
        CHECK(p.targets.data[i] == x * x * x - x);
    }
    const Dataset s = synth_function("abs_sin", 0.0, 3.0, 7, 0.0, 1);
    for (std::size_t i = 0; i < s.n(); ++i) CHECK(s.targets.data[i] >= 0.0);

    CHECK_THROWS_AS(synth_function("sinc", 0.0, 1.0, 5, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(synth_function("sin", 1.0, 0.0, 5, 0.0, 1), ConfigError);
}

TEST_CASE("window_time_series") {
    const Dataset ds = window_time_series({1, 2, 3, 4}, 2);
    CHECK(ds.n() == 2);
    CHECK(ds.features.data == std::vector<double>{1, 2, 2, 3});
    CHECK(ds.targets.data == std::vector<double>{3, 4});

    const Dataset one = window_time_series({1, 2, 3}, 2);
    CHECK(one.n() == 1);

    CHECK_THROWS_AS(window_time_series({1, 2}, 2), DataError);

    // every window element equals the raw series element
    const auto series = geometric_random_walk(60, 100.0, 0.001, 0.02, 5);
    const Dataset w = window_time_series(series, 10);
    for (std::size_t i = 0; i < w.n(); ++i)
        for (std::size_t j = 0; j < 10; ++j) CHECK(w.features.at(i, j) == series[i + j]);
}

TEST_CASE("geometric_random_walk is positive and seeded") {
    const auto a = geometric_random_walk(100, 50.0, 0.0, 0.05, 9);
    const auto b = geometric_random_walk(100, 50.0, 0.0, 0.05, 9);
    CHECK(a == b);
    CHECK(a.size() == 100);
    CHECK(a[0] == 50.0);
    for (double v : a) CHECK(v > 0.0);
}

TEST_CASE("standardize: train statistics applied everywhere") {
    Rng rng(83);
    Dataset train;
    train.features = Tensor({50, 3});
    train.targets = Tensor({std::size_t(50)});
    for (std::size_t i = 0; i < 50; ++i) {
        train.features.at(i, 0) = rng.uniform(5.0, 15.0);
        train.features.at(i, 1) = 7.0; // constant feature
        train.features.at(i, 2) = rng.uniform(-100.0, 100.0);
    }
    Dataset test = train;
    // test must be transformed with train statistics, not its own
    for (std::size_t i = 0; i < 50; ++i) test.features.at(i, 0) += 100.0;

    standardize(train, {&test});

    for (std::size_t j : {std::size_t(0), std::size_t(2)}) {
        double mean = 0.0, var = 0.0;
        for (std::size_t i = 0; i < 50; ++i) mean += train.features.at(i, j);
        mean /= 50.0;
        for (std::size_t i = 0; i < 50; ++i) {
            const double c = train.features.at(i, j) - mean;
            var += c * c;
        }
        CHECK(std::fabs(mean) < 1e-10);
        CHECK(std::fabs(std::sqrt(var / 50.0) - 1.0) < 1e-10);
    }
    for (std::size_t i = 0; i < 50; ++i) CHECK(train.features.at(i, 1) == 0.0); // constant -> 0

    double test_mean0 = 0.0;
    for (std::size_t i = 0; i < 50; ++i) test_mean0 += test.features.at(i, 0);
    CHECK(test_mean0 / 50.0 > 5.0); // shifted data stays shifted under train stats

    // standardizing already-standardized data changes nothing (within 1e-12)
    Dataset again = train;
    standardize(again);
    for (std::size_t i = 0; i < again.features.numel(); ++i)
        if (i % 3 != 1) // skip the constant column (degenerate sigma)
            CHECK(again.features.data[i] == doctest::Approx(train.features.data[i]).epsilon(1e-12));
}

TEST_CASE("split: floor rule, determinism, exhaustive partition") {
    Dataset ds;
    ds.features = Tensor({506, 2});
    ds.targets = Tensor({std::size_t(506)});
    for (std::size_t i = 0; i < 506; ++i) {
        ds.features.at(i, 0) = static_cast<double>(i);
        ds.targets.data[i] = static_cast<double>(i);
    }
    auto [train, test] = split(ds, 0.8, 11);
    CHECK(train.n() == 404); // floor(506 * 0.8)
    CHECK(test.n() == 102);

    auto [train2, test2] = split(ds, 0.8, 11);
    CHECK(train.features.data == train2.features.data);
    CHECK(test.targets.data == test2.targets.data);

    std::vector<bool> seen(506, false);
    for (double v : train.targets.data) seen[static_cast<std::size_t>(v)] = true;
    for (double v : test.targets.data) {
        CHECK_FALSE(seen[static_cast<std::size_t>(v)]); // disjoint
        seen[static_cast<std::size_t>(v)] = true;
    }
    for (bool s : seen) CHECK(s); // exhaustive

    CHECK_THROWS_AS(split(ds, 1.5, 1), ConfigError);
}

TEST_CASE("split_chronological keeps order") {
    Dataset ds;
    ds.features = Tensor({10, 1});
    ds.targets = Tensor({std::size_t(10)});
    for (std::size_t i = 0; i < 10; ++i) ds.targets.data[i] = static_cast<double>(i);
    auto [train, test] = split_chronological(ds, 0.8);
    CHECK(train.n() == 8);
    CHECK(test.targets.data == std::vector<double>{8, 9});
}
