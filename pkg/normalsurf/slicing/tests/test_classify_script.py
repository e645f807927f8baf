import json

import pytest

from normalsurf.scripts.classify_weakly_neighborly import WeaklyNeighborlyClassifier


@pytest.fixture
def classifier(tmp_path):
    return WeaklyNeighborlyClassifier(
        output_file=str(tmp_path / "slicings.json"),
        progress_file=str(tmp_path / "progress.json"),
    )


def test_classify_writes_results_and_clears_progress(classifier, tmp_path):
    types = classifier.classify(["boundary-simplex:3", "bdC4:3"], jobs=1)
    assert types == ["3x3 grid torus", "tetrahedron boundary", "triangular prism boundary"]

    results = json.loads((tmp_path / "slicings.json").read_text())
    assert [s["v1"] for s in results["bdC4:3"]["slicings"]] == [[1, 3, 5]]
    assert results["bdC4:3"]["slicings"][0]["f_vector"] == [9, 18, 0, 9]
    assert results["boundary-simplex:3"]["skipped_symmetric"] == 13
    assert not (tmp_path / "progress.json").exists()


def test_classify_resumes_after_completed_complexes(classifier, tmp_path, capsys):
    (tmp_path / "progress.json").write_text(json.dumps({"completed": ["bdC4:3"]}))
    (tmp_path / "slicings.json").write_text(
        json.dumps({"bdC4:3": {"examined": 0, "skipped_symmetric": 0, "slicings": []}})
    )

    classifier.load_progress()
    types = classifier.classify(["bdC4:3", "boundary-simplex:3"], jobs=1)

    assert types == ["tetrahedron boundary", "triangular prism boundary"]
    output = capsys.readouterr().out
    assert "Resuming after 1 complexes" in output
    assert "Classifying 1/2" not in output
    assert "Classifying 2/2: boundary-simplex:3" in output
