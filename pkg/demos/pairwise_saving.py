"""Two ways to store three prioritized messages over GF(5).

The separate code gives level 3 its own key symbol; the joint code reuses
a coded symbol of level 2 in that slot.  Both are checked exhaustively.
"""
from smdc import fixtures
from smdc.verify import rank_entropy, verify_code

for name, code in [("separate", fixtures.table1_separate()), ("joint", fixtures.table1_joint())]:
    print(f"{name}: {code.total_symbols} stored symbols, keys={len(code.key_index)}")
    print(code.describe())
    report = verify_code(code)
    print(f"  exhaustive check over {report.states} states: {'ok' if report.passed else 'FAILED'}")
    for l in range(1, code.L + 1):
        print(f"  H(M3 | W{l}) = {rank_entropy(code, 'M3', f'W{l}')}  (H(M3) = {rank_entropy(code, 'M3')})")
    print()
