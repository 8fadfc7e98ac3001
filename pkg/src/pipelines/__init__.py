"""解析パイプライン (独立な組 / 従属な組)"""
