"""Built-in stoplist of high-frequency function-like lemmas.

These are lemmas that carry a WordNet entry in an open class (and would
otherwise pass the content-word test) but behave like function words in
running text. The list is applied after lemmatization, so inflected
forms such as "is" or "had" are covered by their lemmas.
"""

DEFAULT_STOPLIST = frozenset(
    """
    be have do not no yes
    can could may might must shall should will would need dare
    a an the this that these those such same other another
    all some any each every either neither both few many much more most
    less least little lot own only very too so just quite rather enough
    and or but if then else when while because although though unless
    until since whether where why how what which who whom whose
    i you he she it we they me him her us them my your his its our their
    mine yours hers ours theirs myself yourself himself herself itself
    ourselves themselves one ones something anything nothing everything
    someone anyone everyone somebody anybody everybody nobody
    of in on at by for with from to into onto over under about above
    below between among through during without within upon across
    behind beside besides toward towards against along around before
    after off up down out near far away back
    here there now then today yesterday tomorrow again once twice
    also even still yet ever never always often sometimes usually
    almost already perhaps maybe however therefore thus moreover
    am is are was were been being has had does did doing done
    s t d ll m re ve don didn doesn isn wasn aren weren hasn hadn
    won wouldn couldn shouldn mustn needn ain
    get let go come
    mr mrs ms dr etc
    """.split()
)
