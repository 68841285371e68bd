# -*- coding: utf-8 -*-
"""
echosig：胎儿超声心动图彩色多普勒帧的分割、Zernike 特征与最近邻分类。
(echosig: segmentation, Zernike features and nearest-neighbor classification of
fetal echocardiography color-Doppler frames.)
"""

__version__ = "1.0.0"
