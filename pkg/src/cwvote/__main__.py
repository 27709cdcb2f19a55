"""Allow ``python -m cwvote``."""

from cwvote.main import main

main()
