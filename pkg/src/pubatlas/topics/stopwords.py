"""Fixed English stopword list used by the preprocessing pipeline.

Vendored so preprocessing output never shifts underneath stored topic
models; the checksum is pinned in the test suite. Do not edit without
retraining expectations.
"""

from __future__ import annotations

import hashlib

STOPWORDS = frozenset(
    """
    a about above across after afterwards again against all almost alone
    along already also although always am among amongst an and another any
    anyhow anyone anything anyway anywhere are around as at back be became
    because become becomes becoming been before beforehand behind being
    below beside besides between beyond both but by can cannot could did do
    does doing done down due during each either else elsewhere enough etc
    even ever every everyone everything everywhere except few for former
    formerly from further had has have having he hence her here hereafter
    hereby herein hereupon hers herself him himself his how however i ie if
    in indeed instead into is it its itself just latter latterly least less
    many may me meanwhile might mine more moreover most mostly much must my
    myself namely neither never nevertheless next no nobody none noone nor
    not nothing now nowhere of off often on once one only onto or other
    otherwise our ours ourselves out over own per perhaps please rather re
    same seem seemed seeming seems several she should since so some somehow
    someone something sometime sometimes somewhere still such than that the
    their theirs them themselves then thence there thereafter thereby
    therefore therein thereupon these they this those though through
    throughout thru thus to together too toward towards under until unto up
    upon us very via was we were what whatever when whence whenever where
    whereafter whereas whereby wherein whereupon wherever whether which
    while whither who whoever whole whom whose why will with within without
    would yet you your yours yourself yourselves
    aren couldn didn doesn don hadn hasn haven isn mightn mustn needn shan
    shouldn wasn weren wouldn
    two three four five six seven eight nine ten eleven twelve thirteen
    fifteen twenty thirty forty fifty sixty seventy ninety hundred third
    eg ie viz vs
    """.split()
)


def checksum() -> str:
    """SHA-256 over the sorted, newline-joined word list."""
    joined = "\n".join(sorted(STOPWORDS)).encode("ascii")
    return hashlib.sha256(joined).hexdigest()
