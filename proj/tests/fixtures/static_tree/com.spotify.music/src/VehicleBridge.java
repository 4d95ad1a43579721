package com.spotify.music;

class VehicleBridge {
  int p0 = read(VENDOR_LANGUAGE_SETTING_127);
  // again: 557842559
  int p1 = read(0x21400236);
  int p2 = read(VENDOR_LANE_KEEP_ASSIST_140);
  String s = "VENDOR_LANGUAGE_SETTING_127X";
  long q = 0x2140007f1;
}
