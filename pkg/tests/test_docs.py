import pathlib
import sys


def test_registry_doc_in_sync():
    root = pathlib.Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(root / "scripts"))
    try:
        import make_registry_doc
    finally:
        sys.path.pop(0)
    want = make_registry_doc.render()
    got = (root / "docs" / "registry.md").read_text()
    assert got == want, "docs/registry.md is stale; run scripts/make_registry_doc.py"
