# -*- coding: utf-8 -*-

"""Launch script of LNCAD."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

if __name__ == '__main__':
    from sys import exit
    from lncad.__main__ import main
    exit(main())
