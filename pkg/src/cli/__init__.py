"""
コマンドラインインターフェース

サブコマンド: hash, second-preimage, forge, bench, verify, selftest, primegen
"""
