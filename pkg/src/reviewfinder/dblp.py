"""Constructed DBLP search URLs for papers and researchers.

Only URL construction: resolving actual DBLP ids would require a live
external service.
"""

from __future__ import annotations

from urllib.parse import quote_plus

PUBLICATION_SEARCH = "https://dblp.org/search/publ?q="
AUTHOR_SEARCH = "https://dblp.org/search/author?q="


def publication_url(title: str) -> str:
    return PUBLICATION_SEARCH + quote_plus(title)


def author_url(name: str) -> str:
    return AUTHOR_SEARCH + quote_plus(name)
