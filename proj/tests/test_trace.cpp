#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include <Eigen/LU>

#include "effortwave/error.hpp"
#include "effortwave/trace.hpp"
#include "fixtures.hpp"

namespace effortwave {
namespace {

LandmarkTrace origin_trace(std::size_t frames, double dt = 0.1) {
    LandmarkTrace trace;
    for (std::size_t i = 0; i < frames; ++i) {
        LandmarkFrame f;
        f.timestamp = static_cast<double>(i) * dt;
        for (const auto& name : pose_landmark_names()) {
            f.positions[name] = Vec3::Zero();
            f.visibility[name] = 1.0;
        }
        trace.frames.push_back(std::move(f));
    }
    return trace;
}

ErrorKind kind_of(const std::string& text, std::string* message = nullptr) {
    try {
        (void)parse_landmark_trace_text(text, pose_landmark_names());
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Validation;
}

LandmarkTrace two_point_trace(std::vector<double> times, std::vector<Vec3> xs) {
    LandmarkTrace trace;
    for (std::size_t i = 0; i < times.size(); ++i) {
        LandmarkFrame f;
        f.timestamp = times[i];
        f.positions["p"] = xs[i];
        f.visibility["p"] = 1.0;
        trace.frames.push_back(std::move(f));
    }
    return trace;
}

TEST(ParseTrace, SingleFrameAtOrigin) {
    const auto trace = parse_landmark_trace_text(serialize_landmark_trace(origin_trace(1)),
                                                 pose_landmark_names());
    ASSERT_EQ(trace.size(), 1u);
    EXPECT_EQ(trace.frames[0].positions.size(), 33u);
    for (const auto& [name, p] : trace.frames[0].positions) EXPECT_EQ(p, Vec3::Zero()) << name;
}

TEST(ParseTrace, RepeatedTimestampIsOrderingError) {
    auto trace = origin_trace(2);
    trace.frames[0].timestamp = 0.1;
    trace.frames[1].timestamp = 0.1;
    std::string msg;
    EXPECT_EQ(kind_of(serialize_landmark_trace(trace), &msg), ErrorKind::Ordering);
    EXPECT_NE(msg.find("frames 0 and 1"), std::string::npos) << msg;
}

TEST(ParseTrace, MissingLandmarkNamesLandmarkAndFrame) {
    auto trace = origin_trace(5);
    trace.frames[3].positions.erase("left_knee");
    std::string msg;
    EXPECT_EQ(kind_of(serialize_landmark_trace(trace), &msg), ErrorKind::Schema);
    EXPECT_NE(msg.find("left_knee"), std::string::npos) << msg;
    EXPECT_NE(msg.find("frame 3"), std::string::npos) << msg;
}

TEST(ParseTrace, OnlyRequiredLandmarksAreChecked) {
    auto trace = origin_trace(2);
    trace.frames[1].positions.erase("left_pinky");
    const std::vector<std::string> required = {"left_knee"};
    EXPECT_NO_THROW((void)parse_landmark_trace_text(serialize_landmark_trace(trace), required));
}

TEST(ParseTrace, MalformedAndSchemaErrors) {
    EXPECT_EQ(kind_of("{\"version\": 1,"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("[]"), ErrorKind::Schema);
    EXPECT_EQ(kind_of(R"({"version":2,"unit_scale":1,"up_axis":"+y","frames":[]})"), ErrorKind::Schema);
    EXPECT_EQ(kind_of(R"({"version":1,"unit_scale":0,"up_axis":"+y","frames":[]})"), ErrorKind::Schema);
    EXPECT_EQ(kind_of(R"({"version":1,"unit_scale":1,"up_axis":"up","frames":[]})"), ErrorKind::Schema);
    EXPECT_EQ(kind_of(R"({"version":1,"unit_scale":1,"up_axis":"+y","frames":[]})"), ErrorKind::Schema);
    EXPECT_EQ(kind_of(R"({"version":1,"unit_scale":1,"up_axis":"+y","frames":[{"t":-1,"landmarks":{}}]})"),
              ErrorKind::Schema);
    EXPECT_EQ(kind_of(R"({"version":1,"unit_scale":1,"up_axis":"+y","frames":[{"t":0,"landmarks":{"nose":{"x":0,"y":"a","z":0}}}]})"),
              ErrorKind::Schema);
}

TEST(ParseTrace, HeaderFieldsAndVisibilityDefault) {
    const std::string text =
        R"({"version":1,"unit_scale":0.5,"up_axis":"-z","frame_rate_hint":null,
            "frames":[{"t":0.25,"landmarks":{"nose":{"x":1,"y":2,"z":3}}}]})";
    const std::vector<std::string> required = {"nose"};
    const auto trace = parse_landmark_trace_text(text, required);
    EXPECT_EQ(trace.unit_scale, 0.5);
    EXPECT_EQ(trace.up_axis, UpAxis::NegZ);
    EXPECT_FALSE(trace.frame_rate_hint.has_value());
    EXPECT_EQ(trace.frames[0].visibility.at("nose"), 1.0);
    EXPECT_EQ(trace.frames[0].positions.at("nose"), Vec3(1, 2, 3));
}

TEST(ParseTrace, MissingFileIsIoError) {
    try {
        (void)parse_landmark_trace("/nonexistent/trace.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}

TEST(TraceRoundTrip, SerializeThenParseIsIdentity) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> step(0.001, 0.2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        LandmarkTrace trace;
        trace.unit_scale = 0.1 + 2.0 * unit(rng);
        trace.up_axis = static_cast<UpAxis>(trial % 4);
        if (trial % 2) trace.frame_rate_hint = 10.0 + 50.0 * unit(rng);
        double t = unit(rng);
        for (int f = 0; f < 5; ++f) {
            LandmarkFrame frame;
            frame.timestamp = t;
            t += step(rng);
            for (const auto& name : pose_landmark_names()) {
                frame.positions[name] = {coord(rng), coord(rng), coord(rng)};
                frame.visibility[name] = unit(rng);
            }
            trace.frames.push_back(std::move(frame));
        }
        const auto back = parse_landmark_trace_text(serialize_landmark_trace(trace), pose_landmark_names());
        EXPECT_EQ(back.unit_scale, trace.unit_scale);
        EXPECT_EQ(back.up_axis, trace.up_axis);
        EXPECT_EQ(back.frame_rate_hint, trace.frame_rate_hint);
        ASSERT_EQ(back.size(), trace.size());
        for (std::size_t f = 0; f < trace.size(); ++f) {
            EXPECT_EQ(back.frames[f].timestamp, trace.frames[f].timestamp);
            EXPECT_EQ(back.frames[f].positions, trace.frames[f].positions);
            EXPECT_EQ(back.frames[f].visibility, trace.frames[f].visibility);
        }
    }
}

TEST(Resample, LinearInterpolationAtFourHertz) {
    const auto out = resample_uniform(two_point_trace({0.0, 1.0}, {Vec3::Zero(), Vec3(1, 0, 0)}), 4.0);
    ASSERT_EQ(out.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_DOUBLE_EQ(out.frames[k].timestamp, 0.25 * static_cast<double>(k));
        EXPECT_DOUBLE_EQ(out.frames[k].positions.at("p").x(), 0.25 * static_cast<double>(k));
    }
    EXPECT_EQ(out.frame_rate_hint, 4.0);
}

TEST(Resample, UniformTraceAtTargetRateIsBitwiseIdentical) {
    const auto in = testing::make_squat_trace(30.0, 1.0);
    const auto out = resample_uniform(in, 30.0);
    ASSERT_EQ(out.size(), in.size());
    for (std::size_t k = 0; k < in.size(); ++k) {
        EXPECT_EQ(out.frames[k].positions, in.frames[k].positions) << "frame " << k;
    }
}

TEST(Resample, ConstantSignalOnIrregularGrid) {
    const Vec3 c(0.3, -1.2, 2.5);
    const auto out = resample_uniform(two_point_trace({0.0, 0.1, 0.3}, {c, c, c}), 10.0);
    ASSERT_EQ(out.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(out.frames[k].timestamp, 0.1 * static_cast<double>(k), 1e-15);
        EXPECT_EQ(out.frames[k].positions.at("p"), c);
    }
}

TEST(Resample, PreservesConstantAndLinearSignalsAtAnyRate) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> gap(0.01, 0.2);
    std::uniform_real_distribution<double> rate(3.0, 250.0);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec3 a{coef(rng), coef(rng), coef(rng)};
        const Vec3 b{coef(rng), coef(rng), coef(rng)};
        std::vector<double> times{coef(rng) + 2.0};
        for (int i = 0; i < 12; ++i) times.push_back(times.back() + gap(rng));
        std::vector<Vec3> lin, cst;
        for (double t : times) {
            lin.push_back(a + t * b);
            cst.push_back(a);
        }
        const double r = rate(rng);
        const auto out_lin = resample_uniform(two_point_trace(times, lin), r);
        const auto out_cst = resample_uniform(two_point_trace(times, cst), r);
        ASSERT_EQ(out_lin.size(), out_cst.size());
        for (std::size_t k = 0; k < out_lin.size(); ++k) {
            const double t = out_lin.frames[k].timestamp;
            EXPECT_EQ(out_cst.frames[k].positions.at("p"), a);
            EXPECT_LT((out_lin.frames[k].positions.at("p") - (a + t * b)).norm(), 1e-12);
            if (k > 0) {
                const double spacing = t - out_lin.frames[k - 1].timestamp;
                EXPECT_LT(std::abs(spacing * r - 1.0), 1e-12);
            }
        }
        EXPECT_EQ(out_lin.frames.front().timestamp, times.front());
        EXPECT_LE(out_lin.frames.back().timestamp, times.back() + 1e-9);
        EXPECT_GT(out_lin.frames.back().timestamp + 1.0 / r, times.back());
    }
}

TEST(Resample, NeedsTwoFramesAndPositiveRate) {
    EXPECT_THROW((void)resample_uniform(two_point_trace({0.0}, {Vec3::Zero()}), 10.0), Error);
    EXPECT_THROW((void)resample_uniform(two_point_trace({0.0, 1.0}, {Vec3::Zero(), Vec3::Zero()}), 0.0),
                 Error);
}

TEST(Uniformity, JitterBelowOnePercentCountsAsUniform) {
    const auto p = Vec3::Zero().eval();
    EXPECT_TRUE(is_uniform(two_point_trace({0.0, 0.1, 0.2005, 0.3}, {p, p, p, p})));
    EXPECT_FALSE(is_uniform(two_point_trace({0.0, 0.1, 0.203, 0.3}, {p, p, p, p})));
}

TEST(UpAxis, RotationsMapUpToPositiveYAndKeepHandedness) {
    const std::vector<std::pair<UpAxis, Vec3>> ups = {{UpAxis::PosY, {0, 1, 0}},
                                                      {UpAxis::NegY, {0, -1, 0}},
                                                      {UpAxis::PosZ, {0, 0, 1}},
                                                      {UpAxis::NegZ, {0, 0, -1}}};
    for (const auto& [axis, up] : ups) {
        EXPECT_EQ(to_y_up(up, axis), Vec3(0, 1, 0)) << to_string(axis);
        Eigen::Matrix3d r;
        r << to_y_up({1, 0, 0}, axis), to_y_up({0, 1, 0}, axis), to_y_up({0, 0, 1}, axis);
        EXPECT_DOUBLE_EQ(r.determinant(), 1.0) << to_string(axis);
        EXPECT_EQ(parse_up_axis(to_string(axis)), axis);
    }
}

TEST(UpAxis, MetricConversionAppliesScaleThenRotation) {
    auto trace = two_point_trace({0.0, 1.0}, {Vec3(1, 2, 3), Vec3(0, 0, 0)});
    trace.unit_scale = 2.0;
    trace.up_axis = UpAxis::NegY;
    const auto m = to_metric_y_up(trace);
    EXPECT_EQ(m.frames[0].positions.at("p"), Vec3(2, -4, -6));
    EXPECT_EQ(m.unit_scale, 1.0);
    EXPECT_EQ(m.up_axis, UpAxis::PosY);
}

TEST(ExtractorContract, CheckedInSampleParsesWithFullTopology) {
    const auto trace = parse_landmark_trace(testing::fixture_dir() / "extractor_sample.json");
    ASSERT_GE(trace.size(), 2u);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        EXPECT_EQ(trace.frames[i].positions.size(), 33u);
        if (i > 0) {
            EXPECT_GT(trace.frames[i].timestamp, trace.frames[i - 1].timestamp);
        }
    }
    EXPECT_EQ(trace.up_axis, UpAxis::NegY);
}

TEST(Fixtures, CheckedInFilesMatchGenerators) {
    const auto dir = testing::fixture_dir();
    EXPECT_EQ(serialize_landmark_trace(parse_landmark_trace(dir / "static_stance.json")),
              serialize_landmark_trace(testing::make_static_trace(30.0, 2.0)));
    EXPECT_EQ(serialize_landmark_trace(parse_landmark_trace(dir / "squat_100fps.json")),
              serialize_landmark_trace(testing::make_squat_trace(100.0, 2.0)));
    EXPECT_EQ(serialize_landmark_trace(parse_landmark_trace(dir / "extractor_sample.json")),
              serialize_landmark_trace(testing::make_extractor_sample()));
}

}  // namespace
}  // namespace effortwave
