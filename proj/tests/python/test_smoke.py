import math

import pytest

import litterscope as ls


def square(x, y, side):
    return [(x, y), (x + side, y), (x + side, y + side), (x, y + side)]


def test_rasterize_and_area():
    count, bbox = ls.rasterize(square(0, 0, 10))
    assert count == 100
    assert bbox == (0, 0, 10, 10)
    assert ls.shoelace_area([(0, 0), (10, 0), (0, 10)]) == 50.0
    assert ls.physical_area(100, 0.0017) == pytest.approx(2.89e-4, rel=1e-15)
    assert ls.instance_centroid([(0, 0), (6, 0), (0, 6)], 1.0) == pytest.approx((2.0, 2.0))
    with pytest.raises(ls.LitterscopeError, match="empty rasterization"):
        ls.rasterize(square(0.1, 0.1, 0.3))


def test_parse_and_validate():
    doc = '{"shapes": [{"label": "G4", "points": [[0,0],[10,0],[10,10],[0,10]]},' \
          ' {"label": "G4", "points": [[0,0],[5,5]]}]}'
    records, issues, gsd = ls.parse_annotations(doc)
    assert len(records) == 1 and len(issues) == 1 and gsd is None
    assert records[0].gcode == "G4"
    text = ls.serialize_annotations(records, "json", 0.0017)
    again, _, gsd = ls.parse_annotations(text)
    assert again == records and gsd == 0.0017
    with pytest.raises(ls.ParseError):
        ls.parse_annotations("{ not json")

    strip = ls.InstanceRecord(1, "G4", square(0, 0, 2))
    unknown = ls.InstanceRecord(2, "G999", square(0, 0, 10))
    accepted, rejected = ls.validate_instances([strip, unknown])
    assert accepted == []
    assert rejected == [(1, "sub-minimum"), (2, "unknown category")]


def test_taxonomy():
    tax = ls.Taxonomy.bundled()
    assert len(tax) == 13
    assert tax["G65"].hazard_weight == 7 and tax["G65"].group == "Fishing"
    assert "G4" in tax and "G2" not in tax
    assert ls.rank_to_weight(5.7) == (7, 8)


def test_size_spectrum_recovers_alpha():
    cfg = ls.SynthConfig()
    cfg.n_instances = 10000
    cfg.scene_width = cfg.scene_height = 20000
    gt, dets, truth = ls.generate_scene(cfg)
    assert len(gt) == len(dets) == len(truth) == 10000
    instances, rejected = ls.build_survey(gt, gsd=cfg.gsd, threads=2)
    assert rejected == []
    fit = ls.fit_areas([i.area_m2 for i in instances])
    assert abs(fit.alpha + 2.0) <= 0.1
    assert fit.r_squared >= 0.98 and fit.p_value < 1e-3

    edges = ls.build_bins()
    assert len(edges) == 15 and edges[0] == 1e-4 and edges[-1] == 10.0
    binning = ls.bin_areas([0.5, 0.5, 5.0], edges)
    assert sum(b.count for b in binning.bins) == 3


def test_risk_and_composition():
    pair = [ls.SurveyInstance(1, "G4", 0.5), ls.SurveyInstance(2, "G76", 1.0, y_m=1.0)]
    assert ls.compute_eri(pair) == 7.0
    two = [ls.SurveyInstance(1, "G151", 1.0, x_m=0.0), ls.SurveyInstance(2, "G76", 1.0, x_m=10.0)]
    assert ls.centroid_shift(two).delta == 2.5
    assert ls.minmax_normalize([-1, 0, 3]) == [0, 0.25, 1]

    groups = ls.compose([ls.SurveyInstance(1, "G4", 0.2), ls.SurveyInstance(2, "G18", 0.5),
                         ls.SurveyInstance(3, "G76", 0.3)])
    assert [g.group for g in groups] == ["Domestic", "Fishing", "Fragments"]
    assert [g.area_share for g in groups] == pytest.approx([0.2, 0.5, 0.3])
    assert ls.overrepresentation(0.0064, 0.0273) == pytest.approx(4.266, abs=1e-3)

    survey = [ls.SurveyInstance(i, "G76", 0.01, y_m=float(i)) for i in range(1, 101)]
    report = ls.analyze_risk(survey, sector_count=10)
    assert [s.count for s in report.sectors] == [10] * 10


def test_evaluation_and_tiles():
    gt = [ls.InstanceRecord(1, "G4", square(0, 0, 10)), ls.InstanceRecord(2, "G4", square(50, 0, 10))]
    dets = [ls.InstanceRecord(1, "G4", square(0, 0, 10), 0.9),
            ls.InstanceRecord(2, "G4", square(100, 0, 10), 0.8),
            ls.InstanceRecord(3, "G4", square(50, 0, 10), 0.7)]
    report = ls.evaluate(dets, gt)
    assert abs(report["map50"] - (0.5 + 0.5 * 2 / 3)) <= 0.01
    assert report["tp"] == 2 and report["fp"] == 1
    assert ls.mask_iou(square(0, 0, 10), square(5, 0, 10)) == pytest.approx(1 / 3)

    assert len(ls.tile_grid(1025, 512)) == 3
    local = ls.InstanceRecord(4, "G4", [(10, 10), (20, 10), (20, 20)])
    local.tile = (1, 2)
    moved = ls.to_global(local, 4096, 4096)
    assert moved.polygon[0] == (1034.0, 522.0) and moved.tile is None


def test_stats_and_sampler():
    assert ls.t_cdf(0.0, 7) == 0.5
    assert ls.t_cdf(1.0, 1) == 0.75
    s = ls.sample_powerlaw(1000, -2.0, 6.25e-4, 10.0, 3)
    assert s == ls.sample_powerlaw(1000, -2.0, 6.25e-4, 10.0, 3)
    assert all(6.25e-4 <= v < 10.0 for v in s)
    assert ls.RNG_ALGORITHM == "mt19937_64/u53"
    with pytest.raises(ValueError):
        ls.sample_powerlaw(10, -1.0, 1.0, 2.0, 1)
    assert math.isclose(ls.powerlaw_cdf(10.0, -2.0, 6.25e-4, 10.0), 1.0)
