"""Regenerate the shipped corpus: ``python3 -m negtrans.corpus [DIR]``."""
import sys

from . import DATA_DIR, build, verify_corpus

target = sys.argv[1] if len(sys.argv) > 1 else DATA_DIR
paths = build(target)
report = verify_corpus(target)
print(f"wrote {len(paths)} proofs to {target}; {len(report.failed())} failed")
sys.exit(0 if report.ok else 1)
