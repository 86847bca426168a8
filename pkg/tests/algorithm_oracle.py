"""Independent step-by-step oracle for the rewriting pipeline.

Deliberately shares no code with the package: words are plain lists of
(symbol, exponent) tuples, maps are plain dicts, reduction is a quadratic
rescan, pairings come from repeated leftmost cancellation, and the rewriting
loop is a literal transcription of its textual description.  Used by tests
to confirm library outputs, including the frozen golden rows.
"""


def oracle_reduce(word):
    word = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            s1, e1 = word[i]
            s2, e2 = word[i + 1]
            if s1 == s2 and e1 == -e2:
                del word[i : i + 2]
                changed = True
                break
    return word


def oracle_pairing(word, mapping):
    """Pairs of 1-based positions cancelled by repeated leftmost reduction.

    Returns None when the image does not reduce to the empty word.
    """
    work = [(mapping[s], e, pos) for pos, (s, e) in enumerate(word, start=1)]
    pairs = []
    while True:
        for i in range(len(work) - 1):
            s1, e1, p1 = work[i]
            s2, e2, p2 = work[i + 1]
            if s1 == s2 and e1 == -e2:
                pairs.append((min(p1, p2), max(p1, p2)))
                del work[i : i + 2]
                break
        else:
            break
    if work:
        return None
    return sorted(pairs)


def oracle_complete_square(y, x, f, h, alphabet):
    for z in alphabet:
        if f[z] == f[y] and h[z] == h[x]:
            return z
    raise AssertionError(f"no square completion for f-class of {y} and h-class of {x}")


def oracle_rewrite(n, x, partner, f, h, alphabet):
    """Run the index walk on a doubled sequence; x is 1-based via x[pos-1].

    Returns (final y dict, testpair log [(j, o(j), z-or-None)], fix log
    [(column, row)]).
    """
    two_n = 2 * n

    def opposite(i):
        return two_n + 1 - i

    def role(i):
        return ("d", i) if i <= n else ("c", opposite(i))

    y = {k: x[min(k, partner[k]) - 1][0] for k in range(1, two_n + 1)}
    unvisited = set(range(1, two_n + 1))
    testpair_log = []
    fix_log = []

    def testpair(j):
        if f[y[j]] == f[y[opposite(j)]]:
            testpair_log.append((j, opposite(j), None))
        else:
            z = oracle_complete_square(y[j], x[opposite(j) - 1][0], f, h, alphabet)
            y[opposite(j)] = z
            testpair_log.append((j, opposite(j), z))

    m = n
    while True:
        unvisited -= {m, opposite(m)}
        testpair(m)
        fix_log.append(role(m))
        fix_log.append(role(opposite(m)))
        if partner[m] != opposite(m):
            for dst, src in sorted([(partner[m], m), (partner[opposite(m)], opposite(m))]):
                y[dst] = y[src]
                fix_log.append(role(dst))
            l = partner[opposite(m)]
            while True:
                unvisited -= {l, opposite(l)}
                if opposite(l) == partner[m]:
                    break
                testpair(l)
                fix_log.append(role(opposite(l)))
                y[partner[opposite(l)]] = y[opposite(l)]
                fix_log.append(role(partner[opposite(l)]))
                l = partner[opposite(l)]
        if unvisited:
            m = min(unvisited)
        else:
            break
    return y, testpair_log, fix_log


def oracle_decompose2(word, f, h, alphabet):
    """Full pipeline; returns (rows, testpair log, fix log)."""
    reduced = oracle_reduce(word)
    n = len(reduced)
    if n == 0:
        return [], [], []
    f_pairs = oracle_pairing(reduced, f)
    assert f_pairs is not None, "word is not in the f-kernel"
    partner_f = {}
    for i, j in f_pairs:
        partner_f[i] = j
        partner_f[j] = i
    b_column = {k: reduced[min(k, partner_f[k]) - 1][0] for k in range(1, n + 1)}
    delta = {k: reduced[k - 1][1] for k in range(1, n + 1)}
    x = [(reduced[k - 1][0], delta[k]) for k in range(1, n + 1)]
    x += [(b_column[k], -delta[k]) for k in range(n, 0, -1)]
    h_pairs = oracle_pairing(x, h)
    assert h_pairs is not None, "word is not in the h-kernel"
    partner = {}
    for i, j in h_pairs:
        partner[i] = j
        partner[j] = i
    y, testpair_log, fix_log = oracle_rewrite(n, x, partner, f, h, alphabet)
    rows = [
        (reduced[k - 1][0], b_column[k], y[2 * n + 1 - k], y[k], delta[k])
        for k in range(1, n + 1)
    ]
    return rows, testpair_log, fix_log


def to_plain(word):
    """Boundary helper: package Word -> plain list of (symbol, exponent)."""
    return [(letter.symbol, letter.exponent) for letter in word.letters]


def map_to_plain(finite_map):
    return dict(finite_map.assignment)
